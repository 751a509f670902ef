#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gsce/corpus/task.hpp"
#include "gsce/llm/cache.hpp"
#include "gsce/llm/chat.hpp"

namespace gsce::llm {

// Completion failure; the runner records it as ErrorCategory::LLMError.
struct AgentError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One interface over live endpoints, replay caches, and the scripted
// offline agents. complete() is safe to call from parallel workers.
class Agent {
public:
    virtual ~Agent() = default;
    virtual std::string complete(const ChatRequest& request) = 0;
    virtual std::string name() const = 0;
};

namespace detail {

inline std::string fenced_response(const std::string& program) {
    return "```\n" + program + "```\n";
}

// Agents keyed by task query text; the generator deduplicates queries
// so the key is unambiguous.
class CorpusKeyedAgent : public Agent {
public:
    explicit CorpusKeyedAgent(const corpus::CorpusFile& corpus) {
        for (const corpus::Task& task : corpus.tasks) {
            if (task.maneuvers) programs_.emplace(task.query, *task.maneuvers);
        }
    }

protected:
    const std::vector<corpus::ManeuverSpec>& maneuvers_for(const std::string& query) const {
        auto it = programs_.find(query);
        if (it == programs_.end()) {
            throw AgentError(name() + ": no maneuvers known for query: " + query);
        }
        return it->second;
    }

private:
    std::map<std::string, std::vector<corpus::ManeuverSpec>> programs_;
};

}  // namespace detail

// Emits a provably correct fenced program for any corpus task,
// ignoring prompt content entirely. Validates the harness end to end.
class OracleAgent final : public detail::CorpusKeyedAgent {
public:
    using CorpusKeyedAgent::CorpusKeyedAgent;

    std::string complete(const ChatRequest& request) override {
        return detail::fenced_response(corpus::oracle_program(maneuvers_for(request.user_text)));
    }
    std::string name() const override { return "oracle"; }
};

enum class Fault { FlipZSign, IgnoreBodyFrame, EmitProse };

inline Fault fault_from_string(const std::string& s) {
    if (s == "flip_z_sign") return Fault::FlipZSign;
    if (s == "ignore_body_frame") return Fault::IgnoreBodyFrame;
    if (s == "emit_prose") return Fault::EmitProse;
    throw std::invalid_argument("unknown fault: " + s);
}

inline std::string to_string(Fault fault) {
    switch (fault) {
        case Fault::FlipZSign: return "flip_z_sign";
        case Fault::IgnoreBodyFrame: return "ignore_body_frame";
        default: return "emit_prose";
    }
}

// Deterministically wrong on purpose: exercises exactly one failure
// mode so scoring discrimination is testable.
class FaultyAgent final : public detail::CorpusKeyedAgent {
public:
    FaultyAgent(const corpus::CorpusFile& corpus, Fault fault)
        : CorpusKeyedAgent(corpus), fault_(fault) {}

    std::string complete(const ChatRequest& request) override {
        if (fault_ == Fault::EmitProse) {
            return "I understand the maneuver, but I am unable to produce a flight program for "
                   "it right now. Please steer the drone manually instead.";
        }
        const std::vector<corpus::ManeuverSpec>& ms = maneuvers_for(request.user_text);
        if (fault_ == Fault::FlipZSign) {
            return detail::fenced_response(corpus::oracle_program(corpus::flip_z_sign(ms)));
        }
        corpus::OracleOptions opts;
        opts.ignore_body_frame = true;
        return detail::fenced_response(corpus::oracle_program(ms, opts));
    }
    std::string name() const override { return "faulty:" + to_string(fault_); }

private:
    Fault fault_;
};

// Serves responses from a ResponseCache. Without an inner agent a miss
// is an error (strict replay); with one, misses fall through to the
// inner agent and the response is recorded — the record/replay mode
// used around live endpoints.
class ReplayAgent final : public Agent {
public:
    explicit ReplayAgent(std::shared_ptr<ResponseCache> cache,
                         std::unique_ptr<Agent> inner = nullptr)
        : cache_(std::move(cache)), inner_(std::move(inner)) {
        if (!cache_) throw std::invalid_argument("ReplayAgent: cache is required");
    }

    std::string complete(const ChatRequest& request) override {
        const std::string key = cache_key(request);
        if (std::optional<std::string> hit = cache_->lookup(key)) return *hit;
        if (!inner_) {
            throw AgentError("replay cache miss: " + key + " (model " + request.model +
                             ", repeat " + std::to_string(request.repeat_index) + ")");
        }
        std::string response = inner_->complete(request);
        cache_->insert(request, response);
        return response;
    }
    std::string name() const override {
        return inner_ ? "record:" + inner_->name() : "replay";
    }

private:
    std::shared_ptr<ResponseCache> cache_;
    std::unique_ptr<Agent> inner_;
};

}  // namespace gsce::llm

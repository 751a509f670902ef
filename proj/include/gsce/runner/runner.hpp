#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "gsce/corpus/task.hpp"
#include "gsce/dronesim/simulator.hpp"
#include "gsce/errors.hpp"
#include "gsce/eval/report.hpp"
#include "gsce/eval/scoring.hpp"
#include "gsce/llm/agent.hpp"
#include "gsce/prompt/composer.hpp"
#include "gsce/runner/extract.hpp"
#include "gsce/skillscript/interpreter.hpp"
#include "gsce/skillscript/parser.hpp"

namespace gsce::runner {

// Everything a batch needs beyond the agent itself. Methods must have
// unique labels so every (task, method, repeat) triple is unambiguous.
struct RunPlan {
    corpus::CorpusFile corpus;
    std::vector<prompt::MethodConfig> methods;
    int repeats = 3;
    std::string model = "offline";
    double temperature = 0.0;
    int max_tokens = 2048;
    eval::Tolerance tolerance;
    eval::CompletenessMode completeness_mode = eval::CompletenessMode::Lcs;
    int parallelism = 4;

    std::vector<prompt::ExampleEntry> library;
    std::string guidelines_text;
    std::string api_docs_text;
    std::string constraints_text;
};

// One task x method x repeat through the full pipeline: compose ->
// complete -> extract -> parse -> interpret -> score. Run-level
// failures land in the RunResult's error category; only configuration
// errors (bad k, etc.) throw.
inline eval::RunResult execute_run(const corpus::Task& task, const prompt::MethodConfig& method,
                                   const RunPlan& plan, llm::Agent& agent, int repeat_index) {
    prompt::PromptBundle bundle =
        prompt::compose(method, plan.library, plan.guidelines_text, plan.api_docs_text,
                        plan.constraints_text, task.query);

    llm::ChatRequest request;
    request.system_text = std::move(bundle.system_text);
    request.user_text = std::move(bundle.user_text);
    request.model = plan.model;
    request.temperature = plan.temperature;
    request.max_tokens = plan.max_tokens;
    request.repeat_index = repeat_index;

    eval::RunResult result;
    result.task_id = task.id;
    result.method = method.label;
    result.model = plan.model;
    result.k = method.include_examples ? method.k : 0;
    result.cot = method.include_examples && method.cot;
    result.constraint_impl = method.include_examples && method.constraint_impl;
    result.repeat_index = repeat_index;
    result.response_ref = llm::cache_key(request);

    sim::Simulator simulator;
    result.error = [&]() -> ErrorCategory {
        std::string response;
        try {
            response = agent.complete(request);
        } catch (const llm::AgentError&) {
            return ErrorCategory::LLMError;
        }
        std::optional<ExtractedCode> code = extract_code(response);
        if (!code) return ErrorCategory::NoCode;
        skillscript::ParseResult parsed = skillscript::parse(code->source);
        if (!parsed.ok()) return parsed.error->category;
        skillscript::ExecutionOutcome outcome = skillscript::interpret(parsed.program, simulator);
        if (outcome.error) return outcome.error->category;
        return ErrorCategory::None;
    }();

    result.actual_transitions = simulator.log();
    eval::ScoreResult score = eval::score_run(result.actual_transitions, task.ground_truth,
                                              plan.tolerance, plan.completeness_mode);
    result.completeness = score.completeness;
    result.success = score.success && result.error == ErrorCategory::None;
    return result;
}

namespace detail {

inline void validate_plan(const RunPlan& plan) {
    if (plan.repeats < 1) throw std::invalid_argument("run plan: repeats must be >= 1");
    if (plan.parallelism < 1) throw std::invalid_argument("run plan: parallelism must be >= 1");
    if (plan.methods.empty()) throw std::invalid_argument("run plan: no methods configured");
    std::set<std::string> labels;
    for (const prompt::MethodConfig& m : plan.methods) {
        if (!labels.insert(m.label).second) {
            throw std::invalid_argument("run plan: duplicate method label: " + m.label);
        }
        if (m.include_examples && static_cast<std::size_t>(m.k) > plan.library.size()) {
            throw std::invalid_argument("run plan: method " + m.label + " needs k = " +
                                        std::to_string(m.k) + " examples, library has " +
                                        std::to_string(plan.library.size()));
        }
    }
}

}  // namespace detail

// Fan the plan's (task, method, repeat) triples over a bounded worker
// pool. Output is sorted by (task_id, method, repeat), so result bytes
// are independent of scheduling; per-run errors are recorded, config
// errors and infrastructure failures throw.
inline std::vector<eval::RunResult> run_plan(const RunPlan& plan, llm::Agent& agent) {
    detail::validate_plan(plan);

    struct Job {
        const corpus::Task* task;
        const prompt::MethodConfig* method;
        int repeat;
    };
    std::vector<Job> jobs;
    jobs.reserve(plan.corpus.tasks.size() * plan.methods.size() *
                 static_cast<std::size_t>(plan.repeats));
    for (const corpus::Task& task : plan.corpus.tasks) {
        for (const prompt::MethodConfig& method : plan.methods) {
            for (int r = 0; r < plan.repeats; ++r) jobs.push_back({&task, &method, r});
        }
    }

    std::vector<eval::RunResult> results(jobs.size());
    std::atomic<std::size_t> next{0};
    std::mutex failure_mutex;
    std::exception_ptr failure;

    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= jobs.size()) return;
            {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (failure) return;
            }
            try {
                results[i] =
                    execute_run(*jobs[i].task, *jobs[i].method, plan, agent, jobs[i].repeat);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };

    const int workers = std::min<int>(plan.parallelism, 64);
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);

    std::sort(results.begin(), results.end(),
              [](const eval::RunResult& a, const eval::RunResult& b) {
                  return std::tie(a.task_id, a.method, a.repeat_index) <
                         std::tie(b.task_id, b.method, b.repeat_index);
              });
    return results;
}

}  // namespace gsce::runner

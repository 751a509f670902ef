#pragma once

#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include "httplib.h"

#include <chrono>
#include <semaphore>
#include <stdexcept>
#include <string>
#include <thread>

#include "json.hpp"

#include "gsce/llm/agent.hpp"
#include "gsce/llm/chat.hpp"

namespace gsce::llm {

struct HttpConfig {
    std::string base_url;  // e.g. https://api.example.com/v1
    std::string api_key;   // resolved from the environment by the caller; never logged
    int timeout_seconds = 60;
    int max_attempts = 3;
    int initial_backoff_ms = 250;
    int max_concurrency = 4;
};

// OpenAI-compatible chat-completions client: POST {base_url}/chat/
// completions, response text from choices[0].message.content. Retries
// transport errors, 429, and 5xx with exponential backoff; other
// statuses fail immediately. An internal semaphore caps in-flight
// requests across threads.
class HttpAgent final : public Agent {
public:
    explicit HttpAgent(HttpConfig config)
        : config_(std::move(config)),
          slots_(config_.max_concurrency > 0 ? config_.max_concurrency : 1) {
        if (config_.max_attempts < 1) throw std::invalid_argument("max_attempts must be >= 1");
        const std::size_t scheme = config_.base_url.find("://");
        if (scheme == std::string::npos) {
            throw std::invalid_argument("base_url must include a scheme: " + config_.base_url);
        }
        std::size_t slash = config_.base_url.find('/', scheme + 3);
        origin_ = config_.base_url.substr(0, slash);
        if (slash != std::string::npos) path_prefix_ = config_.base_url.substr(slash);
        while (!path_prefix_.empty() && path_prefix_.back() == '/') path_prefix_.pop_back();
    }

    std::string complete(const ChatRequest& request) override {
        slots_.acquire();
        struct Release {
            std::counting_semaphore<>& s;
            ~Release() { s.release(); }
        } release{slots_};

        const std::string body = nlohmann::json{
            {"model", request.model},
            {"temperature", request.temperature},
            {"max_tokens", request.max_tokens},
            {"messages",
             nlohmann::json::array({{{"role", "system"}, {"content", request.system_text}},
                                    {{"role", "user"}, {"content", request.user_text}}})}}
                                     .dump();

        httplib::Client client(origin_);
        client.set_connection_timeout(config_.timeout_seconds, 0);
        client.set_read_timeout(config_.timeout_seconds, 0);
        client.set_write_timeout(config_.timeout_seconds, 0);
        httplib::Headers headers;
        if (!config_.api_key.empty()) {
            headers.emplace("Authorization", "Bearer " + config_.api_key);
        }

        std::string last_error;
        for (int attempt = 0; attempt < config_.max_attempts; ++attempt) {
            if (attempt > 0) {
                std::this_thread::sleep_for(std::chrono::milliseconds(
                    static_cast<long long>(config_.initial_backoff_ms) << (attempt - 1)));
            }
            httplib::Result res =
                client.Post(path_prefix_ + "/chat/completions", headers, body, "application/json");
            if (!res) {
                last_error = "transport error: " + httplib::to_string(res.error());
                continue;
            }
            if (res->status == 429 || res->status >= 500) {
                last_error = "status " + std::to_string(res->status);
                continue;
            }
            if (res->status < 200 || res->status >= 300) {
                throw AgentError("http agent: status " + std::to_string(res->status) + ": " +
                                 snippet(res->body));
            }
            return parse_response(res->body);
        }
        throw AgentError("http agent: all " + std::to_string(config_.max_attempts) +
                         " attempts failed; last: " + last_error);
    }

    std::string name() const override { return "http"; }

private:
    static std::string snippet(const std::string& text) {
        return text.size() <= 200 ? text : text.substr(0, 200) + "...";
    }

    static std::string parse_response(const std::string& body) {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(body);
        } catch (const nlohmann::json::exception&) {
            throw AgentError("http agent: response is not JSON: " + snippet(body));
        }
        if (!j.contains("choices") || !j["choices"].is_array() || j["choices"].empty()) {
            throw AgentError("http agent: response has no choices: " + snippet(body));
        }
        const nlohmann::json& choice = j["choices"][0];
        if (choice.contains("finish_reason") && choice["finish_reason"].is_string() &&
            choice["finish_reason"].get<std::string>() == "length") {
            throw AgentError("http agent: response truncated at max_tokens");
        }
        try {
            return choice.at("message").at("content").get<std::string>();
        } catch (const nlohmann::json::exception&) {
            throw AgentError("http agent: malformed choice: " + snippet(body));
        }
    }

    HttpConfig config_;
    std::string origin_;
    std::string path_prefix_;
    std::counting_semaphore<> slots_;
};

}  // namespace gsce::llm

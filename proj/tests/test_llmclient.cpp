#include <gtest/gtest.h>

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <string>
#include <thread>

#include "gsce/corpus/generator.hpp"
#include "gsce/llm/agent.hpp"
#include "gsce/llm/cache.hpp"
#include "gsce/llm/chat.hpp"
#include "gsce/llm/http_agent.hpp"
#include "gsce/runner/extract.hpp"
#include "gsce/skillscript/parser.hpp"

namespace llm = gsce::llm;
namespace corpus = gsce::corpus;

namespace {

llm::ChatRequest make_request() {
    llm::ChatRequest r;
    r.system_text = "system";
    r.user_text = "user";
    r.model = "offline";
    r.temperature = 0.0;
    r.max_tokens = 2048;
    r.repeat_index = 0;
    return r;
}

std::string temp_file(const char* name) {
    std::string path = (std::filesystem::temp_directory_path() / name).string();
    std::remove(path.c_str());
    return path;
}

// Counts how often the inner agent is actually consulted.
class CountingAgent : public llm::Agent {
public:
    explicit CountingAgent(std::string response) : response_(std::move(response)) {}
    std::string complete(const llm::ChatRequest&) override {
        ++calls;
        return response_;
    }
    std::string name() const override { return "counting"; }
    int calls = 0;

private:
    std::string response_;
};

}  // namespace

TEST(CacheKey, SensitiveToEveryRequestField) {
    llm::ChatRequest base = make_request();
    const std::string key = llm::cache_key(base);
    EXPECT_EQ(key.size(), 64u);
    EXPECT_EQ(key.find_first_not_of("0123456789abcdef"), std::string::npos);
    EXPECT_EQ(llm::cache_key(make_request()), key) << "same request, same key";

    llm::ChatRequest r = make_request();
    r.system_text = "system2";
    EXPECT_NE(llm::cache_key(r), key);
    r = make_request();
    r.user_text = "user2";
    EXPECT_NE(llm::cache_key(r), key);
    r = make_request();
    r.model = "other";
    EXPECT_NE(llm::cache_key(r), key);
    r = make_request();
    r.temperature = 0.5;
    EXPECT_NE(llm::cache_key(r), key);
    r = make_request();
    r.max_tokens = 1024;
    EXPECT_NE(llm::cache_key(r), key);
    r = make_request();
    r.repeat_index = 1;
    EXPECT_NE(llm::cache_key(r), key) << "repeats must not collide in the cache";
}

TEST(CacheKey, Sha256KnownAnswer) {
    EXPECT_EQ(llm::sha256_hex("abc"),
              "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    EXPECT_EQ(llm::sha256_hex(""),
              "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST(CacheKey, CanonicalRequestIsStableJson) {
    std::string canonical = llm::canonical_request(make_request());
    nlohmann::json j = nlohmann::json::parse(canonical);
    EXPECT_EQ(j.at("model"), "offline");
    EXPECT_EQ(j.at("repeat_index"), 0);
    // nlohmann objects serialize with sorted keys, making the digest
    // independent of field assignment order.
    EXPECT_EQ(j.dump(), canonical);
}

TEST(ResponseCache, InsertLookupAndReload) {
    std::string path = temp_file("gsce_cache_basic.jsonl");
    llm::ChatRequest request = make_request();
    {
        llm::ResponseCache cache(path);
        EXPECT_EQ(cache.size(), 0u);
        EXPECT_FALSE(cache.lookup(request).has_value());
        std::string digest = cache.insert(request, "reply text");
        EXPECT_EQ(digest, llm::cache_key(request));
        ASSERT_TRUE(cache.lookup(request).has_value());
        EXPECT_EQ(*cache.lookup(request), "reply text");
        EXPECT_EQ(*cache.lookup(digest), "reply text");
    }
    // A fresh instance reloads the persisted entry.
    llm::ResponseCache reloaded(path);
    EXPECT_EQ(reloaded.size(), 1u);
    EXPECT_EQ(*reloaded.lookup(request), "reply text");
    std::remove(path.c_str());
}

TEST(ResponseCache, ReinsertionOverwrites) {
    std::string path = temp_file("gsce_cache_overwrite.jsonl");
    llm::ChatRequest request = make_request();
    llm::ResponseCache cache(path);
    cache.insert(request, "first");
    cache.insert(request, "second");
    EXPECT_EQ(*cache.lookup(request), "second");
    llm::ResponseCache reloaded(path);  // append order: last record wins
    EXPECT_EQ(*reloaded.lookup(request), "second");
    std::remove(path.c_str());
}

TEST(ResponseCache, TamperedRecordsAreRejected) {
    std::string path = temp_file("gsce_cache_tampered.jsonl");
    {
        llm::ResponseCache cache(path);
        cache.insert(make_request(), "reply");
    }
    // Flip the stored hash so it no longer matches the canonical text.
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    in.close();
    nlohmann::json j = nlohmann::json::parse(line);
    std::string hash = j["request_hash"].get<std::string>();
    hash[0] = hash[0] == 'a' ? 'b' : 'a';
    j["request_hash"] = hash;
    std::ofstream(path) << j.dump() << "\n";
    EXPECT_THROW(llm::ResponseCache{path}, std::runtime_error);
    std::remove(path.c_str());
}

TEST(ReplayAgent, StrictReplayMissesAreErrors) {
    std::string path = temp_file("gsce_cache_miss.jsonl");
    auto cache = std::make_shared<llm::ResponseCache>(path);
    llm::ReplayAgent agent(cache);
    try {
        agent.complete(make_request());
        FAIL() << "expected AgentError";
    } catch (const llm::AgentError& e) {
        EXPECT_NE(std::string(e.what()).find("replay cache miss"), std::string::npos);
    }
    std::remove(path.c_str());
}

TEST(ReplayAgent, RecordsThroughInnerAgentOnce) {
    std::string path = temp_file("gsce_cache_record.jsonl");
    auto cache = std::make_shared<llm::ResponseCache>(path);
    auto counting = std::make_unique<CountingAgent>("inner reply");
    CountingAgent* inner = counting.get();
    llm::ReplayAgent agent(cache, std::move(counting));

    EXPECT_EQ(agent.complete(make_request()), "inner reply");
    EXPECT_EQ(agent.complete(make_request()), "inner reply");
    EXPECT_EQ(inner->calls, 1) << "second call must be served from the cache";

    // Strict replay from the recorded file needs no inner agent.
    llm::ReplayAgent strict(std::make_shared<llm::ResponseCache>(path));
    EXPECT_EQ(strict.complete(make_request()), "inner reply");
    std::remove(path.c_str());
}

TEST(OracleAgent, EmitsExecutableFencedProgram) {
    corpus::CorpusFile corpus_file = corpus::generate_corpus(42);
    llm::OracleAgent oracle(corpus_file);
    llm::ChatRequest request = make_request();
    request.user_text = corpus_file.tasks[0].query;
    std::string response = oracle.complete(request);

    std::optional<gsce::runner::ExtractedCode> code = gsce::runner::extract_code(response);
    ASSERT_TRUE(code.has_value());
    EXPECT_EQ(code->mode, gsce::runner::ExtractionMode::Fenced);
    EXPECT_TRUE(gsce::skillscript::parse(code->source).ok()) << code->source;

    request.user_text = "Perform a barrel roll.";  // not a corpus query
    EXPECT_THROW(oracle.complete(request), llm::AgentError);
}

TEST(FaultyAgent, ProseFaultEmitsNoCode) {
    corpus::CorpusFile corpus_file = corpus::generate_corpus(42);
    llm::FaultyAgent prose(corpus_file, llm::Fault::EmitProse);
    llm::ChatRequest request = make_request();
    request.user_text = corpus_file.tasks[0].query;
    std::string response = prose.complete(request);
    EXPECT_EQ(response.find("```"), std::string::npos);
    // The whole-response fallback then fails to parse as a program.
    std::optional<gsce::runner::ExtractedCode> code = gsce::runner::extract_code(response);
    ASSERT_TRUE(code.has_value());
    EXPECT_EQ(code->mode, gsce::runner::ExtractionMode::WholeResponse);
    EXPECT_FALSE(gsce::skillscript::parse(code->source).ok());
}

TEST(FaultyAgent, FaultNamesRoundTrip) {
    EXPECT_EQ(llm::fault_from_string("flip_z_sign"), llm::Fault::FlipZSign);
    EXPECT_EQ(llm::fault_from_string("ignore_body_frame"), llm::Fault::IgnoreBodyFrame);
    EXPECT_EQ(llm::fault_from_string("emit_prose"), llm::Fault::EmitProse);
    EXPECT_THROW(llm::fault_from_string("wrong_way"), std::invalid_argument);
}

// --- HTTP agent against a local stub server -------------------------

namespace {

struct StubServer {
    httplib::Server server;
    std::thread thread;
    int port = 0;

    StubServer() = default;

    void start() {
        port = server.bind_to_any_port("127.0.0.1");
        ASSERT_GT(port, 0);
        thread = std::thread([this] { server.listen_after_bind(); });
        server.wait_until_ready();
    }

    ~StubServer() {
        server.stop();
        if (thread.joinable()) thread.join();
    }

    std::string url(const std::string& prefix = "/v1") const {
        return "http://127.0.0.1:" + std::to_string(port) + prefix;
    }
};

std::string chat_body(const std::string& content, const std::string& finish = "stop") {
    nlohmann::json j = {
        {"choices",
         nlohmann::json::array(
             {{{"finish_reason", finish}, {"message", {{"role", "assistant"}, {"content", content}}}}})}};
    return j.dump();
}

llm::HttpConfig stub_config(const std::string& base_url) {
    llm::HttpConfig config;
    config.base_url = base_url;
    config.timeout_seconds = 5;
    config.max_attempts = 3;
    config.initial_backoff_ms = 1;
    return config;
}

}  // namespace

TEST(HttpAgent, PostsOpenAiShapeAndParsesContent) {
    StubServer stub;
    std::string seen_auth;
    nlohmann::json seen_body;
    stub.server.Post("/v1/chat/completions",
                     [&](const httplib::Request& req, httplib::Response& res) {
                         seen_auth = req.get_header_value("Authorization");
                         seen_body = nlohmann::json::parse(req.body);
                         res.set_content(chat_body("```\ntakeoff()\n```"), "application/json");
                     });
    stub.start();

    llm::HttpConfig config = stub_config(stub.url());
    config.api_key = "sk-test-123";
    llm::HttpAgent agent(config);
    llm::ChatRequest request = make_request();
    request.model = "gpt-test";
    EXPECT_EQ(agent.complete(request), "```\ntakeoff()\n```");
    EXPECT_EQ(seen_auth, "Bearer sk-test-123");
    EXPECT_EQ(seen_body.at("model"), "gpt-test");
    EXPECT_EQ(seen_body.at("messages")[0].at("role"), "system");
    EXPECT_EQ(seen_body.at("messages")[1].at("content"), "user");
}

TEST(HttpAgent, OmitsAuthorizationWithoutKey) {
    StubServer stub;
    std::atomic<bool> had_auth{true};
    stub.server.Post("/v1/chat/completions",
                     [&](const httplib::Request& req, httplib::Response& res) {
                         had_auth = req.has_header("Authorization");
                         res.set_content(chat_body("ok"), "application/json");
                     });
    stub.start();

    llm::HttpAgent agent(stub_config(stub.url()));
    EXPECT_EQ(agent.complete(make_request()), "ok");
    EXPECT_FALSE(had_auth.load());
}

TEST(HttpAgent, RetriesServerErrorsThenSucceeds) {
    StubServer stub;
    std::atomic<int> hits{0};
    stub.server.Post("/v1/chat/completions",
                     [&](const httplib::Request&, httplib::Response& res) {
                         int n = ++hits;
                         if (n == 1) {
                             res.status = 500;
                             res.set_content("boom", "text/plain");
                         } else if (n == 2) {
                             res.status = 429;
                             res.set_content("slow down", "text/plain");
                         } else {
                             res.set_content(chat_body("recovered"), "application/json");
                         }
                     });
    stub.start();

    llm::HttpAgent agent(stub_config(stub.url()));
    EXPECT_EQ(agent.complete(make_request()), "recovered");
    EXPECT_EQ(hits.load(), 3);
}

TEST(HttpAgent, GivesUpAfterMaxAttempts) {
    StubServer stub;
    std::atomic<int> hits{0};
    stub.server.Post("/v1/chat/completions",
                     [&](const httplib::Request&, httplib::Response& res) {
                         ++hits;
                         res.status = 503;
                     });
    stub.start();

    llm::HttpConfig config = stub_config(stub.url());
    config.max_attempts = 2;
    llm::HttpAgent agent(config);
    EXPECT_THROW(agent.complete(make_request()), llm::AgentError);
    EXPECT_EQ(hits.load(), 2);
}

TEST(HttpAgent, ClientErrorsFailImmediately) {
    StubServer stub;
    std::atomic<int> hits{0};
    stub.server.Post("/v1/chat/completions",
                     [&](const httplib::Request&, httplib::Response& res) {
                         ++hits;
                         res.status = 400;
                         res.set_content("{\"error\": \"bad request\"}", "application/json");
                     });
    stub.start();

    llm::HttpAgent agent(stub_config(stub.url()));
    EXPECT_THROW(agent.complete(make_request()), llm::AgentError);
    EXPECT_EQ(hits.load(), 1) << "4xx other than 429 must not be retried";
}

TEST(HttpAgent, TruncatedCompletionIsAnError) {
    StubServer stub;
    stub.server.Post("/v1/chat/completions",
                     [&](const httplib::Request&, httplib::Response& res) {
                         res.set_content(chat_body("partial", "length"), "application/json");
                     });
    stub.start();

    llm::HttpAgent agent(stub_config(stub.url()));
    try {
        agent.complete(make_request());
        FAIL() << "expected AgentError";
    } catch (const llm::AgentError& e) {
        EXPECT_NE(std::string(e.what()).find("truncated"), std::string::npos);
    }
}

TEST(HttpAgent, MalformedResponsesAreErrors) {
    StubServer stub;
    std::atomic<int> mode{0};
    stub.server.Post("/v1/chat/completions",
                     [&](const httplib::Request&, httplib::Response& res) {
                         if (mode.load() == 0) res.set_content("not json", "text/plain");
                         else res.set_content("{\"choices\": []}", "application/json");
                     });
    stub.start();

    llm::HttpAgent agent(stub_config(stub.url()));
    EXPECT_THROW(agent.complete(make_request()), llm::AgentError);
    mode = 1;
    EXPECT_THROW(agent.complete(make_request()), llm::AgentError);
}

TEST(HttpAgent, HonorsBasePathPrefix) {
    StubServer stub;
    std::atomic<int> hits{0};
    stub.server.Post("/proxy/openai/v1/chat/completions",
                     [&](const httplib::Request&, httplib::Response& res) {
                         ++hits;
                         res.set_content(chat_body("prefixed"), "application/json");
                     });
    stub.start();

    llm::HttpAgent agent(stub_config(stub.url("/proxy/openai/v1")));
    EXPECT_EQ(agent.complete(make_request()), "prefixed");
    EXPECT_EQ(hits.load(), 1);

    // Trailing slash on the base URL is tolerated.
    llm::HttpAgent slashed(stub_config(stub.url("/proxy/openai/v1/")));
    EXPECT_EQ(slashed.complete(make_request()), "prefixed");
}

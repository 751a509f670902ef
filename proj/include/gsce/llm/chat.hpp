#pragma once

#include <openssl/evp.h>

#include <string>
#include <string_view>

#include "json.hpp"

namespace gsce::llm {

// A single-shot chat completion request. repeat_index distinguishes
// the (default three) repetitions of the same prompt so each stores a
// separate cached response.
struct ChatRequest {
    std::string system_text;
    std::string user_text;
    std::string model;
    double temperature = 0.0;
    int max_tokens = 2048;
    int repeat_index = 0;
};

inline std::string sha256_hex(std::string_view data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xf]);
    }
    return out;
}

// Canonical serialization of the identity-bearing request fields.
// nlohmann::json orders keys lexicographically, so the text is
// independent of field assembly order.
inline std::string canonical_request(const ChatRequest& r) {
    return nlohmann::json{{"max_tokens", r.max_tokens},
                          {"model", r.model},
                          {"repeat_index", r.repeat_index},
                          {"system_text", r.system_text},
                          {"temperature", r.temperature},
                          {"user_text", r.user_text}}
        .dump();
}

// Stable digest used as the cache key; identical across process runs
// and platforms.
inline std::string cache_key(const ChatRequest& r) { return sha256_hex(canonical_request(r)); }

}  // namespace gsce::llm

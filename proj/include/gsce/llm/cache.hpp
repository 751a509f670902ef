#pragma once

#include <chrono>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "gsce/llm/chat.hpp"

namespace gsce::llm {

// One cached completion, as stored on disk. The canonical request text
// is kept alongside the digest so hash collisions are detectable
// rather than silently wrong.
struct CacheRecord {
    std::string request_hash;
    std::string canonical_request;
    std::string response_text;
    std::string model;
    std::int64_t timestamp = 0;  // seconds since epoch; informational only
};

using json = nlohmann::json;

inline json cache_record_to_json(const CacheRecord& r) {
    return json{{"request_hash", r.request_hash},
                {"canonical_request", r.canonical_request},
                {"response_text", r.response_text},
                {"model", r.model},
                {"timestamp", r.timestamp}};
}

inline CacheRecord cache_record_from_json(const json& j) {
    CacheRecord r;
    r.request_hash = j.at("request_hash").get<std::string>();
    r.canonical_request = j.at("canonical_request").get<std::string>();
    r.response_text = j.at("response_text").get<std::string>();
    r.model = j.at("model").get<std::string>();
    r.timestamp = j.at("timestamp").get<std::int64_t>();
    return r;
}

// JSON-lines response store, loaded eagerly and appended on insert.
// Thread-safe; writes are serialized. A missing file is an empty cache
// that is created on first insert.
class ResponseCache {
public:
    explicit ResponseCache(std::string path) : path_(std::move(path)) {
        std::ifstream in(path_, std::ios::binary);
        if (!in) return;
        std::string line;
        int line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (line.empty()) continue;
            CacheRecord record;
            try {
                record = cache_record_from_json(json::parse(line));
            } catch (const json::exception& e) {
                throw std::runtime_error("cache " + path_ + " line " + std::to_string(line_no) +
                                         ": " + e.what());
            }
            remember(record, line_no);
        }
    }

    std::optional<std::string> lookup(const std::string& request_hash) const {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = entries_.find(request_hash);
        if (it == entries_.end()) return std::nullopt;
        return it->second.response_text;
    }

    std::optional<std::string> lookup(const ChatRequest& request) const {
        return lookup(cache_key(request));
    }

    // Appends to the backing file and the in-memory index. Returns the
    // request digest. Re-inserting the same request overwrites in
    // memory (last record wins on reload, matching append order).
    std::string insert(const ChatRequest& request, const std::string& response_text) {
        CacheRecord record;
        record.canonical_request = canonical_request(request);
        record.request_hash = sha256_hex(record.canonical_request);
        record.response_text = response_text;
        record.model = request.model;
        record.timestamp = std::chrono::duration_cast<std::chrono::seconds>(
                               std::chrono::system_clock::now().time_since_epoch())
                               .count();

        std::lock_guard<std::mutex> lock(mutex_);
        check_collision(record, -1);
        std::ofstream out(path_, std::ios::binary | std::ios::app);
        if (!out) throw std::runtime_error("cannot append to cache: " + path_);
        out << cache_record_to_json(record).dump() << "\n";
        if (!out) throw std::runtime_error("cache write failed: " + path_);
        entries_[record.request_hash] =
            Entry{record.canonical_request, record.response_text};
        return record.request_hash;
    }

    std::size_t size() const {
        std::lock_guard<std::mutex> lock(mutex_);
        return entries_.size();
    }

    const std::string& path() const { return path_; }

private:
    struct Entry {
        std::string canonical_request;
        std::string response_text;
    };

    void remember(const CacheRecord& record, int line_no) {
        if (record.request_hash != sha256_hex(record.canonical_request)) {
            throw std::runtime_error("cache " + path_ + " line " + std::to_string(line_no) +
                                     ": request_hash does not match canonical_request");
        }
        check_collision(record, line_no);
        entries_[record.request_hash] = Entry{record.canonical_request, record.response_text};
    }

    // Same digest for a different request is a hard error, never a
    // silent overwrite.
    void check_collision(const CacheRecord& record, int line_no) const {
        auto it = entries_.find(record.request_hash);
        if (it == entries_.end() || it->second.canonical_request == record.canonical_request) {
            return;
        }
        std::string where = line_no >= 0 ? " line " + std::to_string(line_no) : "";
        throw std::runtime_error("cache " + path_ + where + ": digest collision on " +
                                 record.request_hash + " with a different request");
    }

    const std::string path_;
    mutable std::mutex mutex_;
    std::map<std::string, Entry> entries_;
};

}  // namespace gsce::llm

#pragma once

#include <algorithm>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "gsce/prompt/method_config.hpp"
#include "gsce/skillscript/ast.hpp"
#include "gsce/skillscript/parser.hpp"

namespace gsce::prompt {

// One few-shot example: the query plus three code variants. CoT and
// plain differ only in comments; the no-constraint variant solves the
// task without demonstrating any constraint handling.
struct ExampleEntry {
    std::string id;
    std::string query;
    std::string solution_cot;
    std::string solution_plain;
    std::string solution_no_constraint;
    std::vector<std::string> constraints_covered;
};

// Drop `#` comments (whole-line and trailing) and the lines left empty
// by their removal. SkillScript has no string literals, so every `#`
// starts a comment.
inline std::string strip_comments(const std::string& source) {
    std::istringstream in(source);
    std::string out;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::size_t end = line.find_last_not_of(" \t");
        if (end == std::string::npos) continue;  // blank or comment-only line
        out += line.substr(0, end + 1);
        out += '\n';
    }
    return out;
}

using json = nlohmann::json;

inline constexpr int kLibraryVersion = 1;

inline json example_entry_to_json(const ExampleEntry& e) {
    return json{{"id", e.id},
                {"query", e.query},
                {"solution_cot", e.solution_cot},
                {"solution_plain", e.solution_plain},
                {"solution_no_constraint", e.solution_no_constraint},
                {"constraints_covered", e.constraints_covered}};
}

inline json library_to_json(const std::vector<ExampleEntry>& library) {
    json entries = json::array();
    for (const ExampleEntry& e : library) entries.push_back(example_entry_to_json(e));
    return json{{"version", kLibraryVersion}, {"examples", std::move(entries)}};
}

inline std::string library_to_string(const std::vector<ExampleEntry>& library) {
    return library_to_json(library).dump(2) + "\n";
}

namespace detail {

inline void check_entry(const ExampleEntry& e) {
    const std::pair<const char*, const std::string*> variants[] = {
        {"solution_cot", &e.solution_cot},
        {"solution_plain", &e.solution_plain},
        {"solution_no_constraint", &e.solution_no_constraint}};
    for (const auto& [name, text] : variants) {
        skillscript::ParseResult parsed = skillscript::parse(*text);
        if (!parsed.ok()) {
            throw std::runtime_error("example '" + e.id + "': " + name +
                                     " does not parse: " + parsed.error->message);
        }
    }
    if (!skillscript::equal(skillscript::parse(e.solution_cot).program,
                            skillscript::parse(e.solution_plain).program)) {
        throw std::runtime_error("example '" + e.id +
                                 "': solution_cot and solution_plain differ beyond comments");
    }
}

}  // namespace detail

inline std::vector<ExampleEntry> library_from_json(const json& j) {
    if (j.at("version").get<int>() != kLibraryVersion) {
        throw std::runtime_error("unsupported example library version");
    }
    std::vector<ExampleEntry> library;
    std::set<std::string> ids;
    for (const json& entry : j.at("examples")) {
        ExampleEntry e;
        e.id = entry.at("id").get<std::string>();
        e.query = entry.at("query").get<std::string>();
        e.solution_cot = entry.at("solution_cot").get<std::string>();
        e.solution_plain = entry.at("solution_plain").get<std::string>();
        e.solution_no_constraint = entry.at("solution_no_constraint").get<std::string>();
        e.constraints_covered = entry.at("constraints_covered").get<std::vector<std::string>>();
        if (!ids.insert(e.id).second) {
            throw std::runtime_error("duplicate example id: " + e.id);
        }
        detail::check_entry(e);
        library.push_back(std::move(e));
    }
    return library;
}

inline std::vector<ExampleEntry> load_example_library(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open example library: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    json j;
    try {
        j = json::parse(buffer.str());
    } catch (const json::exception& e) {
        throw std::runtime_error("example library " + path + ": invalid JSON: " + e.what());
    }
    try {
        return library_from_json(j);
    } catch (const json::exception& e) {
        throw std::runtime_error("example library " + path + ": schema error: " + e.what());
    }
}

// The first k entries must jointly cover every constraint id. Returns
// an error listing uncovered ids, or nullopt when coverage holds.
inline std::optional<std::string> validate_library(const std::vector<ExampleEntry>& library,
                                                   const std::vector<std::string>& constraint_ids,
                                                   int k = kDefaultK) {
    std::set<std::string> covered;
    const std::size_t n = std::min(library.size(), static_cast<std::size_t>(std::max(k, 0)));
    for (std::size_t i = 0; i < n; ++i) {
        covered.insert(library[i].constraints_covered.begin(), library[i].constraints_covered.end());
    }
    std::string missing;
    for (const std::string& id : constraint_ids) {
        if (!covered.count(id)) missing += missing.empty() ? id : ", " + id;
    }
    if (missing.empty()) return std::nullopt;
    return "first " + std::to_string(n) + " example(s) leave constraints uncovered: " + missing;
}

}  // namespace gsce::prompt

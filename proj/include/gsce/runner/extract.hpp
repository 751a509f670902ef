#pragma once

#include <optional>
#include <sstream>
#include <string>

namespace gsce::runner {

enum class ExtractionMode { Fenced, WholeResponse };

struct ExtractedCode {
    std::string source;
    ExtractionMode mode = ExtractionMode::Fenced;
};

namespace detail {

inline bool is_fence_line(const std::string& line, std::size_t* content_begin) {
    std::size_t i = line.find_first_not_of(" \t");
    if (i == std::string::npos || line.compare(i, 3, "```") != 0) return false;
    *content_begin = i + 3;
    return true;
}

inline bool is_blank(const std::string& text) {
    return text.find_first_not_of(" \t\r\n") == std::string::npos;
}

}  // namespace detail

// Pull program text out of a model response: all triple-backtick
// fenced blocks (any or no info string) concatenated in order; with no
// fences the whole response is treated as source. Returns nullopt —
// the NoCode outcome — only for an empty/whitespace response.
inline std::optional<ExtractedCode> extract_code(const std::string& response) {
    if (detail::is_blank(response)) return std::nullopt;

    std::istringstream in(response);
    std::string line;
    std::string fenced;
    bool inside = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t after_ticks = 0;
        if (detail::is_fence_line(line, &after_ticks)) {
            inside = !inside;  // opening line's info string is ignored
            continue;
        }
        if (inside) {
            fenced += line;
            fenced += '\n';
        }
    }

    if (!detail::is_blank(fenced)) return ExtractedCode{std::move(fenced), ExtractionMode::Fenced};
    return ExtractedCode{response, ExtractionMode::WholeResponse};
}

}  // namespace gsce::runner

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "gsce/prompt/example_library.hpp"
#include "gsce/prompt/method_config.hpp"

namespace gsce::prompt {

// Which sections went into a bundle, for assertions and reports.
struct SectionManifest {
    bool guidelines = true;
    bool skill_apis = true;
    bool constraints = false;
    int example_count = 0;
    bool cot = false;
    bool constraint_impl = false;
};

struct PromptBundle {
    std::string system_text;
    std::string user_text;  // the task query, verbatim
    SectionManifest manifest;
};

namespace detail {

inline std::string trim_trailing_ws(std::string text) {
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r' || text.back() == ' ' ||
                             text.back() == '\t')) {
        text.pop_back();
    }
    return text;
}

inline std::string fenced(const std::string& code) {
    std::string body = trim_trailing_ws(code);
    return "```\n" + body + (body.empty() ? "" : "\n") + "```";
}

}  // namespace detail

// Deterministic text assembly in fixed section order: guidelines,
// skill APIs, constraints, examples. Examples are the first k library
// entries in file order; the variant is picked by (cot,
// constraint_impl). Throws std::invalid_argument on config errors.
inline PromptBundle compose(const MethodConfig& config, const std::vector<ExampleEntry>& library,
                            const std::string& guidelines_text, const std::string& api_docs_text,
                            const std::string& constraints_text, const std::string& query) {
    if (config.k < 0) throw std::invalid_argument("compose: k must be >= 0");
    if (config.k > 0 && !config.include_examples) {
        throw std::invalid_argument("compose: k > 0 requires include_examples");
    }
    if (config.include_examples && static_cast<std::size_t>(config.k) > library.size()) {
        throw std::invalid_argument("compose: k = " + std::to_string(config.k) +
                                    " exceeds example library size " +
                                    std::to_string(library.size()));
    }

    PromptBundle bundle;
    bundle.user_text = query;
    bundle.manifest.constraints = config.include_constraints;
    bundle.manifest.example_count = config.include_examples ? config.k : 0;
    bundle.manifest.cot = config.include_examples && config.cot;
    bundle.manifest.constraint_impl = config.include_examples && config.constraint_impl;

    std::vector<std::string> sections;
    sections.push_back("# Guidelines\n" + detail::trim_trailing_ws(guidelines_text));
    sections.push_back("# Skill APIs\n" + detail::trim_trailing_ws(api_docs_text));
    if (config.include_constraints) {
        sections.push_back("# Constraints\n" + detail::trim_trailing_ws(constraints_text));
    }
    if (bundle.manifest.example_count > 0) {
        std::string block = "# Examples";
        for (int i = 0; i < config.k; ++i) {
            const ExampleEntry& e = library[static_cast<std::size_t>(i)];
            std::string solution = config.constraint_impl
                                       ? (config.cot ? e.solution_cot : e.solution_plain)
                                       : (config.cot ? e.solution_no_constraint
                                                     : strip_comments(e.solution_no_constraint));
            block += "\n\n## Example " + std::to_string(i + 1) + "\nTask: " + e.query +
                     "\nSolution:\n" + detail::fenced(solution);
        }
        sections.push_back(std::move(block));
    }

    for (std::size_t i = 0; i < sections.size(); ++i) {
        if (i > 0) bundle.system_text += "\n\n";
        bundle.system_text += sections[i];
    }
    bundle.system_text += "\n";
    return bundle;
}

}  // namespace gsce::prompt

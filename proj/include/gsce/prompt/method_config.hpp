#pragma once

#include <stdexcept>
#include <string>

namespace gsce::prompt {

inline constexpr int kDefaultK = 3;

// Which prompt sections a method includes. Guidelines and skill APIs
// are always present; the presets differ in constraints/examples.
struct MethodConfig {
    std::string label = "gsce";
    bool include_constraints = true;
    bool include_examples = true;
    int k = kDefaultK;             // example count, meaningful when include_examples
    bool cot = true;               // examples carry reasoning comments
    bool constraint_impl = true;   // examples demonstrate constraint usage
};

// The four compared methods: (constraints, examples) = base (F,F),
// constraints (T,F), examples (F,T), gsce (T,T).
inline MethodConfig method_preset(const std::string& name) {
    MethodConfig config;
    config.label = name;
    if (name == "base") {
        config.include_constraints = false;
        config.include_examples = false;
    } else if (name == "constraints") {
        config.include_constraints = true;
        config.include_examples = false;
    } else if (name == "examples") {
        config.include_constraints = false;
        config.include_examples = true;
    } else if (name == "gsce") {
        config.include_constraints = true;
        config.include_examples = true;
    } else {
        throw std::invalid_argument("unknown method preset: " + name);
    }
    if (!config.include_examples) {
        config.k = 0;
        config.cot = false;
        config.constraint_impl = false;
    }
    return config;
}

}  // namespace gsce::prompt

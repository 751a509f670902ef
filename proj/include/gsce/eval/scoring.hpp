#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "gsce/dronesim/simulator.hpp"

namespace gsce::eval {

struct Tolerance {
    double pos_eps = 0.1;  // meters, per axis
    double yaw_eps = 1.0;  // degrees, shortest angular path
};

// Component-wise comparison; yaw distance wraps so 179.5 and -179.9
// are 0.6 degrees apart.
inline bool transitions_match(const sim::StateTransition& a, const sim::StateTransition& b,
                              const Tolerance& tol = {}) {
    if (std::fabs(a.dx - b.dx) > tol.pos_eps) return false;
    if (std::fabs(a.dy - b.dy) > tol.pos_eps) return false;
    if (std::fabs(a.dz - b.dz) > tol.pos_eps) return false;
    return std::fabs(sim::normalize_yaw(a.dyaw - b.dyaw)) <= tol.yaw_eps;
}

// Strictly below tolerance on every component — a transition exactly
// at tolerance is kept.
inline bool is_noop(const sim::StateTransition& t, const Tolerance& tol = {}) {
    return std::fabs(t.dx) < tol.pos_eps && std::fabs(t.dy) < tol.pos_eps &&
           std::fabs(t.dz) < tol.pos_eps && std::fabs(sim::normalize_yaw(t.dyaw)) < tol.yaw_eps;
}

// Drop transitions indistinguishable from "stay put" — spurious
// zero-length hops must not break per-index alignment.
inline std::vector<sim::StateTransition> filter_noops(const std::vector<sim::StateTransition>& log,
                                                      const Tolerance& tol = {}) {
    std::vector<sim::StateTransition> out;
    out.reserve(log.size());
    for (const sim::StateTransition& t : log) {
        if (!is_noop(t, tol)) out.push_back(t);
    }
    return out;
}

// Longest common subsequence under tolerance matching. Classic DP over
// a (n+1) x (m+1) table, rolling one row at a time.
inline std::size_t lcs_length(const std::vector<sim::StateTransition>& a,
                              const std::vector<sim::StateTransition>& b,
                              const Tolerance& tol = {}) {
    if (a.empty() || b.empty()) return 0;
    std::vector<std::size_t> prev(b.size() + 1, 0);
    std::vector<std::size_t> curr(b.size() + 1, 0);
    for (std::size_t i = 1; i <= a.size(); ++i) {
        for (std::size_t j = 1; j <= b.size(); ++j) {
            if (transitions_match(a[i - 1], b[j - 1], tol)) {
                curr[j] = prev[j - 1] + 1;
            } else {
                curr[j] = std::max(prev[j], curr[j - 1]);
            }
        }
        std::swap(prev, curr);
    }
    return prev[b.size()];
}

enum class CompletenessMode {
    Lcs,     // LCS(actual, gt) / len(gt)
    Prefix,  // longest matching prefix / len(gt)
};

struct ScoreResult {
    bool success = false;
    double completeness = 0.0;
};

// Score one executed run against ground truth. `actual` is the raw
// simulator log; no-ops are filtered here before comparison.
inline ScoreResult score_run(const std::vector<sim::StateTransition>& actual,
                             const std::vector<sim::StateTransition>& gt,
                             const Tolerance& tol = {},
                             CompletenessMode mode = CompletenessMode::Lcs) {
    std::vector<sim::StateTransition> filtered = filter_noops(actual, tol);

    ScoreResult result;
    if (filtered.size() == gt.size()) {
        result.success = true;
        for (std::size_t i = 0; i < gt.size(); ++i) {
            if (!transitions_match(filtered[i], gt[i], tol)) {
                result.success = false;
                break;
            }
        }
    }

    if (gt.empty()) {
        result.completeness = 1.0;
        return result;
    }
    if (mode == CompletenessMode::Lcs) {
        result.completeness = static_cast<double>(lcs_length(filtered, gt, tol)) /
                              static_cast<double>(gt.size());
    } else {
        std::size_t prefix = 0;
        while (prefix < filtered.size() && prefix < gt.size() &&
               transitions_match(filtered[prefix], gt[prefix], tol)) {
            ++prefix;
        }
        result.completeness = static_cast<double>(prefix) / static_cast<double>(gt.size());
    }
    return result;
}

}  // namespace gsce::eval

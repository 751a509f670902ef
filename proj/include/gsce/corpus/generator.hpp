#pragma once

#include <cctype>
#include <cstdint>
#include <random>
#include <utility>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "gsce/corpus/maneuver.hpp"
#include "gsce/corpus/task.hpp"

namespace gsce::corpus {

struct GeneratorCounts {
    int family_a = 15;
    int family_b = 15;
    int family_c = 14;
};

namespace detail {

// Thin wrapper over mt19937_64 using raw modulo draws. std::uniform_*
// distributions are implementation-defined, which would break the
// byte-identical-corpus guarantee across standard libraries; modulo
// bias is irrelevant here.
class Draw {
public:
    explicit Draw(std::uint64_t seed) : engine_(seed) {}

    std::size_t pick(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }

    template <typename T, std::size_t N>
    T from(const T (&grid)[N]) {
        return grid[pick(N)];
    }

    double sign() { return pick(2) == 0 ? 1.0 : -1.0; }

private:
    std::mt19937_64 engine_;
};

constexpr double kMoveMagnitudes[] = {1.0, 1.5, 2.0, 2.5, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0};
constexpr double kTurnDegrees[] = {30.0, 45.0, 60.0, 90.0, 120.0, 135.0, 150.0, 180.0};
constexpr double kPlaneAngles[] = {30.0, 45.0, 60.0};
constexpr double kPlaneDistances[] = {2.0, 2.5, 3.0, 4.0, 5.0, 6.0, 8.0, 10.0};

inline RelativeMove random_axis_move(Draw& rng, Frame frame) {
    double mag = rng.from(kMoveMagnitudes) * rng.sign();
    RelativeMove move;
    move.frame = frame;
    switch (rng.pick(3)) {
        case 0: move.dx = mag; break;
        case 1: move.dy = mag; break;
        default: move.dz = mag; break;
    }
    return move;
}

inline Turn random_turn(Draw& rng) { return Turn{rng.from(kTurnDegrees) * rng.sign()}; }

inline std::vector<ManeuverSpec> random_maneuvers(Draw& rng, Family family) {
    std::vector<ManeuverSpec> out;
    switch (family) {
        case Family::A: {
            std::size_t len = 1 + rng.pick(3);
            for (std::size_t i = 0; i < len; ++i) out.push_back(random_axis_move(rng, Frame::World));
            break;
        }
        case Family::B: {
            std::size_t len = 2 + rng.pick(3);
            out.push_back(random_turn(rng));
            bool has_move = false;
            for (std::size_t i = 1; i < len; ++i) {
                if (i + 1 < len && rng.pick(3) == 0) {
                    out.push_back(random_turn(rng));
                } else {
                    out.push_back(random_axis_move(rng, Frame::Body));
                    has_move = true;
                }
            }
            if (!has_move) out.back() = random_axis_move(rng, Frame::Body);
            break;
        }
        default: {
            if (rng.pick(2) == 1) out.push_back(random_turn(rng));
            PlaneAngleMove m;
            switch (rng.pick(3)) {
                case 0: m.plane = Plane::XY; break;
                case 1: m.plane = Plane::XZ; break;
                default: m.plane = Plane::YZ; break;
            }
            m.angle_deg = rng.from(kPlaneAngles);
            m.distance_m = rng.from(kPlaneDistances);
            m.sign_primary = rng.pick(2) == 0 ? 1 : -1;
            m.sign_secondary = rng.pick(2) == 0 ? 1 : -1;
            out.push_back(m);
            break;
        }
    }
    return out;
}

inline std::vector<std::string> task_tags(Family family, const std::vector<ManeuverSpec>& ms) {
    std::vector<std::string> tags;
    switch (family) {
        case Family::A: tags.push_back("world-frame"); break;
        case Family::B:
            tags.push_back("body-frame");
            tags.push_back("turn");
            break;
        default: {
            tags.push_back("plane-angle");
            for (const ManeuverSpec& m : ms) {
                if (const auto* plane = std::get_if<PlaneAngleMove>(&m)) {
                    std::string name = plane_name(plane->plane);
                    for (char& c : name) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
                    tags.push_back(name + "-plane");
                }
                if (std::holds_alternative<Turn>(m)) tags.push_back("turn");
            }
            break;
        }
    }
    if (ms.size() > 1) tags.push_back("multi-step");
    return tags;
}

inline std::string task_id(Family family, int index, int count) {
    int width = 2;
    for (int c = count; c > 99; c /= 10) ++width;
    std::string digits = std::to_string(index);
    while (static_cast<int>(digits.size()) < width) digits.insert(digits.begin(), '0');
    return family_name(family) + digits;
}

}  // namespace detail

// Deterministic corpus synthesis: identical (seed, counts) produce
// byte-identical files. Queries are deduplicated so agents keyed by
// query text stay unambiguous.
inline CorpusFile generate_corpus(std::uint64_t seed, const GeneratorCounts& counts = {}) {
    if (counts.family_a < 0 || counts.family_b < 0 || counts.family_c < 0) {
        throw std::invalid_argument("generate_corpus: counts must be >= 0");
    }
    detail::Draw rng(seed);
    CorpusFile corpus;
    std::unordered_set<std::string> used_queries;

    const std::pair<Family, int> plan[] = {
        {Family::A, counts.family_a}, {Family::B, counts.family_b}, {Family::C, counts.family_c}};
    for (const auto& [family, count] : plan) {
        for (int i = 1; i <= count; ++i) {
            Task task;
            for (int attempt = 0;; ++attempt) {
                if (attempt >= 10000) {
                    throw std::runtime_error("generate_corpus: query space exhausted");
                }
                std::vector<ManeuverSpec> ms = detail::random_maneuvers(rng, family);
                std::string query = render_query(ms);
                if (!used_queries.insert(query).second) continue;
                task.maneuvers = std::move(ms);
                task.query = std::move(query);
                break;
            }
            task.id = detail::task_id(family, i, count);
            task.family = family;
            task.tags = detail::task_tags(family, *task.maneuvers);
            task.ground_truth = derive_ground_truth(*task.maneuvers);
            if (std::optional<std::string> err = validate_task(task)) {
                throw std::logic_error("generate_corpus: produced invalid task: " + *err);
            }
            corpus.tasks.push_back(std::move(task));
        }
    }
    return corpus;
}

}  // namespace gsce::corpus

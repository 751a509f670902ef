#pragma once

#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "json.hpp"

#include "gsce/corpus/maneuver.hpp"
#include "gsce/dronesim/simulator.hpp"
#include "gsce/eval/scoring.hpp"
#include "gsce/skillscript/interpreter.hpp"
#include "gsce/skillscript/parser.hpp"

namespace gsce::corpus {

inline constexpr int kCorpusVersion = 1;

// A: axis-aligned world moves; B: turns + body-frame moves; C: angled
// plane moves.
enum class Family { A, B, C };

inline std::string family_name(Family f) {
    switch (f) {
        case Family::A: return "A";
        case Family::B: return "B";
        default: return "C";
    }
}

inline Family family_from_string(const std::string& s) {
    if (s == "A") return Family::A;
    if (s == "B") return Family::B;
    if (s == "C") return Family::C;
    throw std::runtime_error("unknown family: " + s);
}

struct Task {
    std::string id;
    std::string query;
    Family family = Family::A;
    std::vector<std::string> tags;
    std::vector<sim::StateTransition> ground_truth;
    // Present for generated/derivable tasks; absent corpora can still
    // be scored but not oracle-validated.
    std::optional<std::vector<ManeuverSpec>> maneuvers;
};

struct CorpusFile {
    int version = kCorpusVersion;
    std::vector<Task> tasks;
};

// JSON mapping ------------------------------------------------------

using json = nlohmann::json;

inline json maneuver_to_json(const ManeuverSpec& spec) {
    json j;
    if (const auto* move = std::get_if<RelativeMove>(&spec)) {
        j["type"] = "relative_move";
        j["frame"] = move->frame == Frame::World ? "world" : "body";
        j["dx"] = move->dx;
        j["dy"] = move->dy;
        j["dz"] = move->dz;
    } else if (const auto* turn = std::get_if<Turn>(&spec)) {
        j["type"] = "turn";
        j["degrees_clockwise"] = turn->degrees_clockwise;
    } else {
        const auto& m = std::get<PlaneAngleMove>(spec);
        j["type"] = "plane_angle_move";
        j["plane"] = detail::plane_name(m.plane);
        j["angle_deg"] = m.angle_deg;
        j["distance_m"] = m.distance_m;
        j["sign_primary"] = m.sign_primary;
        j["sign_secondary"] = m.sign_secondary;
    }
    return j;
}

inline ManeuverSpec maneuver_from_json(const json& j) {
    const std::string type = j.at("type").get<std::string>();
    if (type == "relative_move") {
        RelativeMove move;
        const std::string frame = j.at("frame").get<std::string>();
        if (frame == "world") {
            move.frame = Frame::World;
        } else if (frame == "body") {
            move.frame = Frame::Body;
        } else {
            throw std::runtime_error("unknown frame: " + frame);
        }
        move.dx = j.at("dx").get<double>();
        move.dy = j.at("dy").get<double>();
        move.dz = j.at("dz").get<double>();
        return move;
    }
    if (type == "turn") {
        return Turn{j.at("degrees_clockwise").get<double>()};
    }
    if (type == "plane_angle_move") {
        PlaneAngleMove m;
        const std::string plane = j.at("plane").get<std::string>();
        if (plane == "XY") {
            m.plane = Plane::XY;
        } else if (plane == "XZ") {
            m.plane = Plane::XZ;
        } else if (plane == "YZ") {
            m.plane = Plane::YZ;
        } else {
            throw std::runtime_error("unknown plane: " + plane);
        }
        m.angle_deg = j.at("angle_deg").get<double>();
        m.distance_m = j.at("distance_m").get<double>();
        m.sign_primary = j.at("sign_primary").get<int>();
        m.sign_secondary = j.at("sign_secondary").get<int>();
        return m;
    }
    throw std::runtime_error("unknown maneuver type: " + type);
}

inline json task_to_json(const Task& task) {
    json j;
    j["id"] = task.id;
    j["query"] = task.query;
    j["family"] = family_name(task.family);
    j["tags"] = task.tags;
    json gt = json::array();
    for (const sim::StateTransition& t : task.ground_truth) {
        gt.push_back(json::array({t.dx, t.dy, t.dz, t.dyaw}));
    }
    j["ground_truth"] = std::move(gt);
    if (task.maneuvers) {
        json ms = json::array();
        for (const ManeuverSpec& m : *task.maneuvers) ms.push_back(maneuver_to_json(m));
        j["maneuvers"] = std::move(ms);
    }
    return j;
}

inline Task task_from_json(const json& j) {
    Task task;
    task.id = j.at("id").get<std::string>();
    task.query = j.at("query").get<std::string>();
    task.family = family_from_string(j.at("family").get<std::string>());
    if (j.contains("tags")) task.tags = j.at("tags").get<std::vector<std::string>>();
    for (const json& row : j.at("ground_truth")) {
        if (!row.is_array() || row.size() != 4) {
            throw std::runtime_error("ground_truth rows must be [dx,dy,dz,dyaw]");
        }
        task.ground_truth.push_back({row[0].get<double>(), row[1].get<double>(),
                                     row[2].get<double>(), row[3].get<double>()});
    }
    if (j.contains("maneuvers")) {
        std::vector<ManeuverSpec> ms;
        for (const json& m : j.at("maneuvers")) ms.push_back(maneuver_from_json(m));
        task.maneuvers = std::move(ms);
    }
    return task;
}

inline json corpus_to_json(const CorpusFile& corpus) {
    json j;
    j["version"] = corpus.version;
    json tasks = json::array();
    for (const Task& t : corpus.tasks) tasks.push_back(task_to_json(t));
    j["tasks"] = std::move(tasks);
    return j;
}

inline CorpusFile corpus_from_json(const json& j) {
    CorpusFile corpus;
    corpus.version = j.at("version").get<int>();
    if (corpus.version != kCorpusVersion) {
        throw std::runtime_error("unsupported corpus version: " + std::to_string(corpus.version));
    }
    for (const json& t : j.at("tasks")) corpus.tasks.push_back(task_from_json(t));
    return corpus;
}

// Validation --------------------------------------------------------

namespace detail {

inline std::string transition_str(const sim::StateTransition& t) {
    using skillscript::format_number;
    return "[" + format_number(t.dx) + ", " + format_number(t.dy) + ", " + format_number(t.dz) +
           ", " + format_number(t.dyaw) + "]";
}

}  // namespace detail

// Structural checks plus, when maneuvers are present, an oracle
// round-trip: the oracle program must reproduce ground_truth on a
// fresh simulator within scoring tolerance. Returns an error message,
// or nullopt when the task is valid.
inline std::optional<std::string> validate_task(const Task& task, const eval::Tolerance& tol = {}) {
    if (task.id.empty()) return "task id is empty";
    if (task.ground_truth.empty()) return "task " + task.id + ": ground_truth is empty";
    for (size_t i = 0; i < task.ground_truth.size(); ++i) {
        const sim::StateTransition& t = task.ground_truth[i];
        std::string where = "task " + task.id + ": ground_truth[" + std::to_string(i) + "]";
        if (!std::isfinite(t.dx) || !std::isfinite(t.dy) || !std::isfinite(t.dz) ||
            !std::isfinite(t.dyaw)) {
            return where + " has non-finite components";
        }
        if (t.dyaw != 0.0 && (t.dx != 0.0 || t.dy != 0.0 || t.dz != 0.0)) {
            return where + " mixes movement and rotation";
        }
        if (t.dyaw <= -180.0 || t.dyaw > 180.0) return where + " dyaw outside (-180, 180]";
        if (eval::is_noop(t, tol)) return where + " is a no-op at scoring tolerance (unscorable)";
    }
    if (!task.maneuvers) return std::nullopt;

    if (task.maneuvers->size() != task.ground_truth.size()) {
        return "task " + task.id + ": maneuver count != ground_truth length";
    }
    skillscript::ParseResult parsed = skillscript::parse(oracle_program(*task.maneuvers));
    if (!parsed.ok()) {
        return "task " + task.id + ": oracle program failed to parse: " + parsed.error->message;
    }
    sim::Simulator simulator;
    skillscript::ExecutionOutcome outcome = skillscript::interpret(parsed.program, simulator);
    if (outcome.error) {
        return "task " + task.id + ": oracle execution failed: " + outcome.error->message;
    }
    const std::vector<sim::StateTransition>& log = simulator.log();
    size_t n = std::min(log.size(), task.ground_truth.size());
    for (size_t i = 0; i < n; ++i) {
        if (!eval::transitions_match(log[i], task.ground_truth[i], tol)) {
            return "task " + task.id + ": oracle diverges from ground_truth at transition " +
                   std::to_string(i) + ": got " + detail::transition_str(log[i]) + ", expected " +
                   detail::transition_str(task.ground_truth[i]);
        }
    }
    if (log.size() != task.ground_truth.size()) {
        return "task " + task.id + ": oracle logged " + std::to_string(log.size()) +
               " transitions, ground_truth has " + std::to_string(task.ground_truth.size());
    }
    return std::nullopt;
}

// File I/O ----------------------------------------------------------

inline std::string corpus_to_string(const CorpusFile& corpus) {
    return corpus_to_json(corpus).dump(2) + "\n";
}

inline void save_corpus(const CorpusFile& corpus, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << corpus_to_string(corpus);
    if (!out) throw std::runtime_error("write failed: " + path);
}

// Parses, checks id uniqueness, and (by default) re-validates every
// task. Throws std::runtime_error with the first problem found.
inline CorpusFile load_corpus(const std::string& path, bool validate = true) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open corpus: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();

    json j;
    try {
        j = json::parse(buffer.str());
    } catch (const json::exception& e) {
        throw std::runtime_error("corpus " + path + ": invalid JSON: " + e.what());
    }
    CorpusFile corpus;
    try {
        corpus = corpus_from_json(j);
    } catch (const json::exception& e) {
        throw std::runtime_error("corpus " + path + ": schema error: " + e.what());
    }

    std::unordered_set<std::string> ids;
    for (const Task& task : corpus.tasks) {
        if (!ids.insert(task.id).second) {
            throw std::runtime_error("corpus " + path + ": duplicate task id: " + task.id);
        }
    }
    if (validate) {
        for (const Task& task : corpus.tasks) {
            if (std::optional<std::string> err = validate_task(task)) {
                throw std::runtime_error("corpus " + path + ": " + *err);
            }
        }
    }
    return corpus;
}

}  // namespace gsce::corpus

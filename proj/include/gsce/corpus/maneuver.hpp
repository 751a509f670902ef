#pragma once

#include <cctype>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "gsce/dronesim/simulator.hpp"
#include "gsce/skillscript/printer.hpp"

namespace gsce::corpus {

enum class Frame { World, Body };
enum class Plane { XY, XZ, YZ };

// Straight displacement, meters. World-frame moves used by the
// generator are axis-aligned; body-frame moves are rotated by the yaw
// in effect when the maneuver executes.
struct RelativeMove {
    Frame frame = Frame::World;
    double dx = 0.0;
    double dy = 0.0;
    double dz = 0.0;
};

// Signed clockwise degrees, |degrees| <= 180.
struct Turn {
    double degrees_clockwise = 0.0;
};

// Diagonal move inside one body-frame plane: `angle_deg` from the
// plane's primary axis (X for XY/XZ, Y for YZ), in [0, 90]. The signs
// pick the quadrant; for the vertical planes sign_secondary = +1 means
// "top" (upward, i.e. negative Z).
struct PlaneAngleMove {
    Plane plane = Plane::YZ;
    double angle_deg = 0.0;
    double distance_m = 0.0;
    int sign_primary = 1;
    int sign_secondary = 1;
};

using ManeuverSpec = std::variant<RelativeMove, Turn, PlaneAngleMove>;

// Body-frame displacement of a plane-angle move.
inline sim::Vec3 plane_body_delta(const PlaneAngleMove& m) {
    double rad = m.angle_deg * (std::numbers::pi / 180.0);
    double along = m.sign_primary * m.distance_m * std::cos(rad);
    double across = m.sign_secondary * m.distance_m * std::sin(rad);
    switch (m.plane) {
        case Plane::XY: return {along, across, 0.0};
        case Plane::XZ: return {along, 0.0, -across};
        default: return {0.0, along, -across};  // YZ
    }
}

// Closed-form fold over the maneuver list, tracking yaw. This is the
// reference the simulator route is cross-validated against.
inline std::vector<sim::StateTransition> derive_ground_truth(const std::vector<ManeuverSpec>& maneuvers) {
    std::vector<sim::StateTransition> out;
    out.reserve(maneuvers.size());
    double yaw = 0.0;
    for (const ManeuverSpec& spec : maneuvers) {
        if (const auto* turn = std::get_if<Turn>(&spec)) {
            double delta = sim::normalize_yaw(turn->degrees_clockwise);
            out.push_back({0.0, 0.0, 0.0, delta});
            yaw = sim::normalize_yaw(yaw + delta);
        } else if (const auto* move = std::get_if<RelativeMove>(&spec)) {
            if (move->frame == Frame::World) {
                out.push_back({move->dx, move->dy, move->dz, 0.0});
            } else {
                sim::Vec3 d = sim::body_to_world(move->dx, move->dy, move->dz, yaw);
                out.push_back({d.x, d.y, d.z, 0.0});
            }
        } else {
            const auto& plane = std::get<PlaneAngleMove>(spec);
            sim::Vec3 body = plane_body_delta(plane);
            sim::Vec3 d = sim::body_to_world(body.x, body.y, body.z, yaw);
            out.push_back({d.x, d.y, d.z, 0.0});
        }
    }
    return out;
}

// Negate every vertical displacement, leaving turns and horizontal
// components alone. Drives the flip_z_sign faulty agent.
inline std::vector<ManeuverSpec> flip_z_sign(std::vector<ManeuverSpec> maneuvers) {
    for (ManeuverSpec& spec : maneuvers) {
        if (auto* move = std::get_if<RelativeMove>(&spec)) {
            move->dz = -move->dz;
        } else if (auto* plane = std::get_if<PlaneAngleMove>(&spec)) {
            if (plane->plane != Plane::XY) plane->sign_secondary = -plane->sign_secondary;
        }
    }
    return maneuvers;
}

// True if any maneuver displaces the drone vertically.
inline bool has_vertical_component(const std::vector<ManeuverSpec>& maneuvers) {
    for (const ManeuverSpec& spec : maneuvers) {
        if (const auto* move = std::get_if<RelativeMove>(&spec)) {
            if (move->dz != 0.0) return true;
        } else if (const auto* plane = std::get_if<PlaneAngleMove>(&spec)) {
            if (plane->plane != Plane::XY) return true;
        }
    }
    return false;
}

struct OracleOptions {
    // Emit body-frame maneuvers as if they were world-frame, skipping
    // the yaw rotation. Drives the ignore_body_frame faulty agent.
    bool ignore_body_frame = false;
};

namespace detail {

using skillscript::format_number;

// "base" / "base + 3" / "base - 4.5", or "base + (expr)" for symbolic terms.
inline std::string offset_term(const std::string& base, const std::string& comp) {
    if (comp == "0") return base;
    if (!comp.empty() && comp[0] == '-') return base + " - (" + comp.substr(1) + ")";
    return base + " + (" + comp + ")";
}

inline void emit_world_move(std::string& out, const std::string& pos, const std::string comps[3]) {
    out += "fly_to(" + offset_term(pos + ".x", comps[0]) + ", " + offset_term(pos + ".y", comps[1]) +
           ", " + offset_term(pos + ".z", comps[2]) + ")\n";
}

inline void emit_body_move(std::string& out, const std::string& pos, const std::string& yaw,
                           const std::string comps[3]) {
    std::string c = "cos(radians(" + yaw + "))";
    std::string s = "sin(radians(" + yaw + "))";
    std::string dx = pos + ".x";
    std::string dy = pos + ".y";
    if (comps[0] != "0") {
        dx += " + (" + comps[0] + ") * " + c;
        dy += " + (" + comps[0] + ") * " + s;
    }
    if (comps[1] != "0") {
        dx += " - (" + comps[1] + ") * " + s;
        dy += " + (" + comps[1] + ") * " + c;
    }
    out += "fly_to(" + dx + ", " + dy + ", " + offset_term(pos + ".z", comps[2]) + ")\n";
}

inline void plane_component_strings(const PlaneAngleMove& m, std::string comps[3]) {
    std::string along = format_number(m.distance_m) + " * cos(radians(" + format_number(m.angle_deg) + "))";
    std::string across = format_number(m.distance_m) + " * sin(radians(" + format_number(m.angle_deg) + "))";
    if (m.sign_primary < 0) along = "-(" + along + ")";
    // For the vertical planes "top" means up, which is negative Z.
    std::string vertical = (m.plane == Plane::XY)
                               ? (m.sign_secondary < 0 ? "-(" + across + ")" : across)
                               : (m.sign_secondary > 0 ? "-(" + across + ")" : across);
    switch (m.plane) {
        case Plane::XY:
            comps[0] = along;
            comps[1] = vertical;  // in-plane second axis, no Z involved
            comps[2] = "0";
            break;
        case Plane::XZ:
            comps[0] = along;
            comps[1] = "0";
            comps[2] = vertical;
            break;
        default:
            comps[0] = "0";
            comps[1] = along;
            comps[2] = vertical;
            break;
    }
}

}  // namespace detail

// Emit a SkillScript program that realizes the maneuvers through the
// skill APIs, reading state fresh before each step. Executing it on a
// reset simulator reproduces derive_ground_truth.
inline std::string oracle_program(const std::vector<ManeuverSpec>& maneuvers, OracleOptions opts = {}) {
    using detail::emit_body_move;
    using detail::emit_world_move;
    using skillscript::format_number;

    std::string out = "takeoff()\n";
    for (size_t i = 0; i < maneuvers.size(); ++i) {
        const std::string n = std::to_string(i);
        const std::string pos = "pos" + n;
        const std::string yaw = "yaw" + n;
        out += "# step " + std::to_string(i + 1) + "\n";
        if (const auto* turn = std::get_if<Turn>(&maneuvers[i])) {
            out += "let " + yaw + " = get_yaw()\n";
            double d = turn->degrees_clockwise;
            out += "set_yaw(" + yaw + (d < 0 ? " - " + format_number(-d) : " + " + format_number(d)) + ")\n";
            continue;
        }
        out += "let " + pos + " = get_drone_position()\n";
        std::string comps[3];
        bool body = false;
        if (const auto* move = std::get_if<RelativeMove>(&maneuvers[i])) {
            comps[0] = format_number(move->dx);
            comps[1] = format_number(move->dy);
            comps[2] = format_number(move->dz);
            body = move->frame == Frame::Body;
        } else {
            detail::plane_component_strings(std::get<PlaneAngleMove>(maneuvers[i]), comps);
            body = true;
        }
        if (body && !opts.ignore_body_frame) {
            out += "let " + yaw + " = get_yaw()\n";
            emit_body_move(out, pos, yaw, comps);
        } else {
            emit_world_move(out, pos, comps);
        }
    }
    return out;
}

// NL rendering ------------------------------------------------------

namespace detail {

inline std::string direction_word(double dx, double dy, double dz) {
    int nonzero = (dx != 0.0) + (dy != 0.0) + (dz != 0.0);
    if (nonzero != 1) throw std::invalid_argument("render_query: move must be axis-aligned");
    if (dx > 0) return "forward";
    if (dx < 0) return "backward";
    if (dy > 0) return "right";
    if (dy < 0) return "left";
    return dz > 0 ? "down" : "up";
}

inline std::string quadrant_word(const PlaneAngleMove& m) {
    switch (m.plane) {
        case Plane::XY:
            return std::string(m.sign_primary > 0 ? "front" : "back") + "-" +
                   (m.sign_secondary > 0 ? "right" : "left");
        case Plane::XZ:
            return std::string(m.sign_secondary > 0 ? "top" : "bottom") + "-" +
                   (m.sign_primary > 0 ? "forward" : "backward");
        default:
            return std::string(m.sign_secondary > 0 ? "top" : "bottom") + "-" +
                   (m.sign_primary > 0 ? "right" : "left");
    }
}

inline std::string plane_name(Plane p) {
    switch (p) {
        case Plane::XY: return "XY";
        case Plane::XZ: return "XZ";
        default: return "YZ";
    }
}

inline std::string maneuver_phrase(const ManeuverSpec& spec) {
    if (const auto* turn = std::get_if<Turn>(&spec)) {
        double d = turn->degrees_clockwise;
        return "turn " + format_number(std::fabs(d)) + " degrees " +
               (d >= 0 ? "clockwise" : "counterclockwise");
    }
    if (const auto* move = std::get_if<RelativeMove>(&spec)) {
        double mag = std::fabs(move->dx) + std::fabs(move->dy) + std::fabs(move->dz);
        std::string phrase =
            "fly " + format_number(mag) + " meters " + direction_word(move->dx, move->dy, move->dz);
        if (move->frame == Frame::Body) phrase += " in the drone's body frame";
        return phrase;
    }
    const auto& m = std::get<PlaneAngleMove>(spec);
    const char* axis = m.plane == Plane::XY ? "forward" : "horizontal";
    return "fly the drone in the " + quadrant_word(m) + " direction at an angle of " +
           format_number(m.angle_deg) + " degrees from the " + axis + " axis, in the " +
           plane_name(m.plane) + " plane of drone's body frame for a distance of " +
           format_number(m.distance_m) + " meters";
}

}  // namespace detail

// Deterministic NL query for a maneuver list, following the corpus
// phrasing templates.
inline std::string render_query(const std::vector<ManeuverSpec>& maneuvers) {
    if (maneuvers.empty()) throw std::invalid_argument("render_query: empty maneuver list");
    std::string out;
    for (size_t i = 0; i < maneuvers.size(); ++i) {
        std::string phrase = detail::maneuver_phrase(maneuvers[i]);
        if (i == 0) {
            phrase[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(phrase[0])));
            out += phrase;
        } else {
            out += ", then " + phrase;
        }
    }
    out += ".";
    return out;
}

}  // namespace gsce::corpus

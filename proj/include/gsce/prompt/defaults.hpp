#pragma once

#include <string>
#include <vector>

#include "gsce/prompt/example_library.hpp"

namespace gsce::prompt {

// Default section texts and example library. The files under assets/
// are generated copies of these definitions; a test pins the byte
// equality, so edit here and regenerate rather than editing the files.

inline constexpr const char* kDefaultGuidelines =
    R"(You are a drone control assistant. Given a task description, write a program in SkillScript, a small straight-line command language, that accomplishes the task.

SkillScript rules:
- One statement per line: either a skill/function call or an assignment (`let name = expr` or `name = expr`).
- Expressions may use numbers, named variables, the constant `pi`, the operators + - * /, parentheses, and the math functions sin, cos, tan, atan2, sqrt, abs, min, max, radians, degrees. Trigonometric functions work in radians; use radians(d) to convert degrees.
- A position value returned by get_drone_position() exposes the fields .x, .y, .z.
- Comments start with `#` and run to the end of the line.
- There are no loops, conditionals, or user-defined functions.

Output requirements:
- Respond with exactly one fenced code block containing the complete program; do not put code outside the fence.
- Call only the skills listed in the Skill APIs section and the math functions above; never invent functions.
- The program must start with takeoff().
)";

inline constexpr const char* kDefaultApiDocs =
    R"(- takeoff(): lifts the drone from the ground to the default hover altitude. Must be the first movement command; fails if the drone is already airborne.
- land(): descends to the ground at the current X, Y position. Only valid while airborne.
- fly_to(x, y, z) or fly_to(x, y, z, velocity): flies in a straight line to the absolute world coordinates (x, y, z) in meters. The optional velocity argument is accepted for compatibility and ignored. Only valid while airborne.
- set_yaw(yaw): rotates the drone in place to the absolute heading `yaw` in degrees, clockwise-positive. Only valid while airborne.
- get_yaw(): returns the current heading in degrees, in the range (-180, 180].
- get_drone_position(): returns the current world position; access its components as .x, .y, .z.
)";

inline constexpr const char* kDefaultConstraints =
    R"(- [ned_down_positive_z] The world frame is NED: X points north, Y points east, Z points down. Flying down means increasing Z; flying up means decreasing Z. Hovering altitude h corresponds to z = -h.
- [yaw_clockwise_positive] Yaw is measured in degrees, clockwise-positive viewed from above, in (-180, 180]. A clockwise turn adds to the current yaw; a counterclockwise turn subtracts from it.
- [body_frame_transform] The body frame has x forward, y right, z down, rotated from the world frame by the current yaw. Convert a body-frame displacement (dxb, dyb, dzb) to world deltas with dx = dxb * cos(yaw) - dyb * sin(yaw), dy = dxb * sin(yaw) + dyb * cos(yaw), dz = dzb, with yaw in radians.
- [relative_to_current_position] fly_to and set_yaw take absolute targets. Read the current state with get_drone_position() and get_yaw() first and compute each target relative to it; never assume the drone is at the origin.
)";

inline const std::vector<std::string>& default_constraint_ids() {
    static const std::vector<std::string> ids = {
        "ned_down_positive_z",
        "yaw_clockwise_positive",
        "body_frame_transform",
        "relative_to_current_position",
    };
    return ids;
}

namespace detail {

inline ExampleEntry make_entry(std::string id, std::string query, std::string cot,
                               std::string no_constraint, std::vector<std::string> covered) {
    ExampleEntry e;
    e.id = std::move(id);
    e.query = std::move(query);
    e.solution_plain = strip_comments(cot);
    e.solution_cot = std::move(cot);
    e.solution_no_constraint = std::move(no_constraint);
    e.constraints_covered = std::move(covered);
    return e;
}

}  // namespace detail

inline std::vector<ExampleEntry> default_example_library() {
    using detail::make_entry;
    std::vector<ExampleEntry> lib;

    lib.push_back(make_entry(
        "vertical-updown", "Fly 5 meters down, then fly 4 meters up.",
        R"(takeoff()
# Step 1: fly 5 meters down. In NED, down is positive Z, so add 5 to z.
let pos0 = get_drone_position()
fly_to(pos0.x, pos0.y, pos0.z + 5)
# Step 2: fly 4 meters up. Up is negative Z, so subtract 4 from z.
let pos1 = get_drone_position()
fly_to(pos1.x, pos1.y, pos1.z - 4)
)",
        R"(takeoff()
fly_to(0, 0, 3.5)
fly_to(0, 0, -0.5)
)",
        {"ned_down_positive_z", "relative_to_current_position"}));

    lib.push_back(make_entry(
        "turn-body-left", "Turn 90 degrees clockwise, then fly 4 meters left in the drone's body frame.",
        R"(takeoff()
# Step 1: turn 90 degrees clockwise. Yaw is clockwise-positive, so add 90.
let yaw0 = get_yaw()
set_yaw(yaw0 + 90)
# Step 2: fly 4 meters left in the body frame, a body delta of (0, -4, 0).
# Convert body to world: dx = dxb*cos(yaw) - dyb*sin(yaw), dy = dxb*sin(yaw) + dyb*cos(yaw).
let pos0 = get_drone_position()
let yaw1 = get_yaw()
let dxb = 0
let dyb = -4
let dx = dxb * cos(radians(yaw1)) - dyb * sin(radians(yaw1))
let dy = dxb * sin(radians(yaw1)) + dyb * cos(radians(yaw1))
fly_to(pos0.x + dx, pos0.y + dy, pos0.z)
)",
        R"(takeoff()
set_yaw(90)
fly_to(4, 0, -1.5)
)",
        {"yaw_clockwise_positive", "body_frame_transform", "relative_to_current_position"}));

    lib.push_back(make_entry(
        "plane-yz-topright",
        "Fly the drone in the top-right direction at an angle of 30 degrees from the horizontal "
        "axis, in the YZ plane of drone's body frame for a distance of 10 meters.",
        R"(takeoff()
# Decompose the YZ-plane move into body components:
# right = 10 * cos(30 deg), up = 10 * sin(30 deg).
# Up is negative Z in NED, so the body delta is (0, 10*cos(30), -10*sin(30)).
let pos0 = get_drone_position()
let yaw0 = get_yaw()
let dyb = 10 * cos(radians(30))
let dzb = -(10 * sin(radians(30)))
# Body to world at the current yaw: dx = -dyb*sin(yaw), dy = dyb*cos(yaw), dz = dzb.
let dx = 0 * cos(radians(yaw0)) - dyb * sin(radians(yaw0))
let dy = 0 * sin(radians(yaw0)) + dyb * cos(radians(yaw0))
fly_to(pos0.x + dx, pos0.y + dy, pos0.z + dzb)
)",
        R"(takeoff()
fly_to(0, 8.6603, -6.5)
)",
        {"ned_down_positive_z", "body_frame_transform", "relative_to_current_position"}));

    lib.push_back(make_entry(
        "forward-then-ccw", "Fly 3 meters forward, then turn 45 degrees counterclockwise.",
        R"(takeoff()
# Step 1: fly 3 meters forward, a body delta of (3, 0, 0) converted to world.
let pos0 = get_drone_position()
let yaw0 = get_yaw()
let dx = 3 * cos(radians(yaw0))
let dy = 3 * sin(radians(yaw0))
fly_to(pos0.x + dx, pos0.y + dy, pos0.z)
# Step 2: counterclockwise is the negative yaw direction, so subtract 45 degrees.
let yaw1 = get_yaw()
set_yaw(yaw1 - 45)
)",
        R"(takeoff()
fly_to(3, 0, -1.5)
set_yaw(-45)
)",
        {"yaw_clockwise_positive", "body_frame_transform", "relative_to_current_position"}));

    lib.push_back(make_entry(
        "up-then-right", "Fly 2 meters up, then fly 6 meters right.",
        R"(takeoff()
# Step 1: up is negative Z, so subtract 2 from the z coordinate.
let pos0 = get_drone_position()
fly_to(pos0.x, pos0.y, pos0.z - 2)
# Step 2: right is positive Y in the world frame (east).
let pos1 = get_drone_position()
fly_to(pos1.x, pos1.y + 6, pos1.z)
)",
        R"(takeoff()
fly_to(0, 0, -3.5)
fly_to(0, 6, -3.5)
)",
        {"ned_down_positive_z", "relative_to_current_position"}));

    lib.push_back(make_entry(
        "half-turn-forward",
        "Turn 180 degrees clockwise, then fly 2.5 meters forward in the drone's body frame.",
        R"(takeoff()
# Step 1: a clockwise half turn adds 180 to the current yaw.
let yaw0 = get_yaw()
set_yaw(yaw0 + 180)
# Step 2: forward is a body delta of (2.5, 0, 0); rotate it into the world frame.
let pos0 = get_drone_position()
let yaw1 = get_yaw()
let dx = 2.5 * cos(radians(yaw1))
let dy = 2.5 * sin(radians(yaw1))
fly_to(pos0.x + dx, pos0.y + dy, pos0.z)
)",
        R"(takeoff()
set_yaw(180)
fly_to(-2.5, 0, -1.5)
)",
        {"yaw_clockwise_positive", "body_frame_transform", "relative_to_current_position"}));

    lib.push_back(make_entry(
        "plane-yz-topleft",
        "Fly the drone in the top-left direction at an angle of 45 degrees from the horizontal "
        "axis, in the YZ plane of drone's body frame for a distance of 4 meters.",
        R"(takeoff()
# Left = negative body y: -(4 * cos(45 deg)). Up = negative Z: -(4 * sin(45 deg)).
let pos0 = get_drone_position()
let yaw0 = get_yaw()
let dyb = -(4 * cos(radians(45)))
let dzb = -(4 * sin(radians(45)))
# Rotate the body delta into the world frame at the current yaw.
let dx = 0 * cos(radians(yaw0)) - dyb * sin(radians(yaw0))
let dy = 0 * sin(radians(yaw0)) + dyb * cos(radians(yaw0))
fly_to(pos0.x + dx, pos0.y + dy, pos0.z + dzb)
)",
        R"(takeoff()
fly_to(0, -2.8284, -4.3284)
)",
        {"ned_down_positive_z", "body_frame_transform", "relative_to_current_position"}));

    lib.push_back(make_entry(
        "ccw-then-down", "Turn 60 degrees counterclockwise, then fly 1 meter down.",
        R"(takeoff()
# Step 1: counterclockwise 60 degrees is a yaw change of -60.
let yaw0 = get_yaw()
set_yaw(yaw0 - 60)
# Step 2: down is positive Z, so add 1 to the z coordinate.
let pos0 = get_drone_position()
fly_to(pos0.x, pos0.y, pos0.z + 1)
)",
        R"(takeoff()
set_yaw(-60)
fly_to(0, 0, -0.5)
)",
        {"yaw_clockwise_positive", "ned_down_positive_z", "relative_to_current_position"}));

    return lib;
}

}  // namespace gsce::prompt

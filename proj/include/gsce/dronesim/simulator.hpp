#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "gsce/skillscript/host.hpp"

namespace gsce::sim {

using skillscript::HostError;
using skillscript::Vec3;

// World frame is NED: X north, Y east, Z down. Yaw is degrees,
// clockwise-positive viewed from above, kept in (-180, 180].

inline double normalize_yaw(double deg) {
    if (!std::isfinite(deg)) throw HostError("normalize_yaw: non-finite input");
    double r = std::fmod(deg, 360.0);
    if (r <= -180.0) r += 360.0;
    else if (r > 180.0) r -= 360.0;
    return r;
}

// Rotate a body-frame displacement (x forward, y right, z down) into
// world axes at the given yaw. Z is yaw-invariant.
inline Vec3 body_to_world(double dxb, double dyb, double dzb, double yaw_deg) {
    if (!std::isfinite(dxb) || !std::isfinite(dyb) || !std::isfinite(dzb) || !std::isfinite(yaw_deg))
        throw HostError("body_to_world: non-finite input");
    double rad = yaw_deg * (std::numbers::pi / 180.0);
    double c = std::cos(rad);
    double s = std::sin(rad);
    return Vec3{dxb * c - dyb * s, dxb * s + dyb * c, dzb};
}

struct DroneState {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
    double yaw = 0.0;
    bool airborne = false;
};

// One scored [dX, dY, dZ, dYaw] delta. A movement has dyaw == 0;
// a rotation has zero position deltas.
struct StateTransition {
    double dx = 0.0;
    double dy = 0.0;
    double dz = 0.0;
    double dyaw = 0.0;
};

struct SimulatorConfig {
    double takeoff_altitude_m = 1.5;
};

// Kinematic state machine: skills take effect instantly, and only
// post-takeoff movement/rotation commands are appended to the log.
class Simulator final : public skillscript::SkillHost {
public:
    explicit Simulator(SimulatorConfig config = {}) : config_(config) {}

    void reset() {
        state_ = DroneState{};
        log_.clear();
    }

    const DroneState& state() const { return state_; }
    const std::vector<StateTransition>& log() const { return log_; }
    const SimulatorConfig& config() const { return config_; }

    void takeoff() override {
        if (state_.airborne) throw HostError("takeoff: already airborne");
        state_.z = -config_.takeoff_altitude_m;
        state_.airborne = true;
    }

    void land() override {
        if (!state_.airborne) throw HostError("land: not airborne");
        state_.z = 0.0;
        state_.airborne = false;
    }

    double get_yaw() override { return state_.yaw; }

    void set_yaw(double yaw_deg) override {
        if (!state_.airborne) throw HostError("set_yaw: not airborne");
        if (!std::isfinite(yaw_deg)) throw HostError("set_yaw: non-finite yaw");
        double target = normalize_yaw(yaw_deg);
        double delta = normalize_yaw(yaw_deg - state_.yaw);
        log_.push_back(StateTransition{0.0, 0.0, 0.0, delta});
        state_.yaw = target;
    }

    void fly_to(double x, double y, double z) override {
        if (!state_.airborne) throw HostError("fly_to: not airborne");
        if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z))
            throw HostError("fly_to: non-finite target");
        log_.push_back(StateTransition{x - state_.x, y - state_.y, z - state_.z, 0.0});
        state_.x = x;
        state_.y = y;
        state_.z = z;
    }

    Vec3 get_drone_position() override { return Vec3{state_.x, state_.y, state_.z}; }

private:
    SimulatorConfig config_;
    DroneState state_;
    std::vector<StateTransition> log_;
};

}  // namespace gsce::sim

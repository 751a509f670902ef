#pragma once

#include <stdexcept>
#include <string>

namespace gsce::skillscript {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

// Thrown by a host when a skill precondition is violated (fly_to while
// grounded, double takeoff, non-finite argument). The interpreter maps
// it to a RuntimeError at the offending statement.
class HostError : public std::runtime_error {
public:
    explicit HostError(const std::string& what) : std::runtime_error(what) {}
};

// The six drone skills a program may call. One host instance per run.
class SkillHost {
public:
    virtual ~SkillHost() = default;

    virtual void takeoff() = 0;
    virtual void land() = 0;
    virtual double get_yaw() = 0;
    virtual void set_yaw(double yaw_deg) = 0;
    virtual void fly_to(double x, double y, double z) = 0;
    virtual Vec3 get_drone_position() = 0;
};

}  // namespace gsce::skillscript

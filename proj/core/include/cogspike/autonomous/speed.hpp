#pragma once

#include <cstdint>
#include <vector>

#include "cogspike/autonomous/conditioning.hpp"
#include "cogspike/autonomous/gridworld.hpp"

namespace cogspike {

struct SpeedTaskConfig {
    double cue_distance = 12.0;  // proximity cue turns on within this many cells of the wall
    double tick_ms = 40.0;       // sensing window per approach action
    int train_episodes = 40;
    int eval_episodes = 20;
    double turn_threshold_cr_ms = 60.0;  // accumulated full-strength response before turning
    ConditioningConfig circuit;
};

struct SpeedPoint {
    double speed = 1.0;
    double success = 0.0;
};

struct SpeedResult {
    double train_success = 0.0;         // avoidance fraction across the training approaches
    std::vector<SpeedPoint> per_speed;  // frozen evaluation, test_speeds order
};

// Corridor avoidance driven by the associative circuit: the proximity cue is
// the conditioned stimulus, collision the reinforcer, and the avoidance turn
// fires once the accumulated response crosses threshold. Training happens at
// train_speed; evaluation never learns. The cue-to-collision interval shrinks
// as speed grows, which is what the transfer test probes.
SpeedResult speed_generalization(const GridWorld& env, double train_speed,
                                 const std::vector<double>& test_speeds, std::uint64_t seed,
                                 const SpeedTaskConfig& cfg = {});

}  // namespace cogspike

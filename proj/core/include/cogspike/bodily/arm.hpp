#pragma once

#include <stdexcept>
#include <vector>

namespace cogspike {

// One planar movement order: constant per-bin angle changes for each joint,
// applied over a whole episode window.
struct MotorCommand {
    std::vector<double> joint_deltas_deg;  // per time bin
    double timestamp_ms = 0.0;
};

struct TrajectoryPoint {
    double t_ms = 0.0;
    double x = 0.0;
    double y = 0.0;
};

struct Trajectory {
    std::vector<TrajectoryPoint> samples;

    bool empty() const { return samples.empty(); }
    std::size_t size() const { return samples.size(); }

    void validate() const {
        for (std::size_t i = 1; i < samples.size(); ++i)
            if (samples[i].t_ms <= samples[i - 1].t_ms)
                throw std::invalid_argument("trajectory: time must be strictly increasing");
    }
};

// Two-link planar arm. Commands integrate from the home pose, so a command
// fully determines the end-effector arc.
struct TwoLinkArm {
    double link1 = 0.5;
    double link2 = 0.5;
    double home_deg1 = 35.0;
    double home_deg2 = 55.0;
    double max_delta_deg = 6.0;  // per-bin joint limit
    int bins = 30;
    double bin_ms = 20.0;

    Trajectory execute(const MotorCommand& cmd) const;
};

// Pearson correlation of the concatenated x and y series; both trajectories
// must have the same sample count.
double trajectory_correlation(const Trajectory& a, const Trajectory& b);

enum class Origin { self, world };

// Self iff the observed arc correlates with the predicted one at or above
// the threshold.
Origin classify_self_world(const Trajectory& predicted, const Trajectory& observed,
                           double threshold = 0.8);

}  // namespace cogspike

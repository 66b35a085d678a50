#include "cogspike/bodily/arm.hpp"

#include <cmath>

namespace cogspike {

namespace {
constexpr double kDegToRad = 3.14159265358979323846 / 180.0;
}

Trajectory TwoLinkArm::execute(const MotorCommand& cmd) const {
    if (cmd.joint_deltas_deg.size() != 2)
        throw std::invalid_argument("arm: command needs one delta per joint");
    for (double d : cmd.joint_deltas_deg)
        if (!std::isfinite(d) || std::abs(d) > max_delta_deg)
            throw std::invalid_argument("arm: joint delta outside limits");

    double a1 = home_deg1;
    double a2 = home_deg2;
    Trajectory traj;
    traj.samples.reserve(static_cast<std::size_t>(bins));
    for (int k = 0; k < bins; ++k) {
        a1 += cmd.joint_deltas_deg[0];
        a2 += cmd.joint_deltas_deg[1];
        const double r1 = a1 * kDegToRad;
        const double r2 = (a1 + a2) * kDegToRad;
        traj.samples.push_back({cmd.timestamp_ms + (k + 1) * bin_ms,
                                link1 * std::cos(r1) + link2 * std::cos(r2),
                                link1 * std::sin(r1) + link2 * std::sin(r2)});
    }
    return traj;
}

double trajectory_correlation(const Trajectory& a, const Trajectory& b) {
    if (a.empty() || b.empty())
        throw std::invalid_argument("trajectory_correlation: empty trajectory");
    if (a.size() != b.size())
        throw std::invalid_argument("trajectory_correlation: sample counts differ");

    const std::size_t n = 2 * a.size();
    auto value = [&](const Trajectory& t, std::size_t i) {
        return i < t.size() ? t.samples[i].x : t.samples[i - t.size()].y;
    };
    double mean_a = 0.0, mean_b = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mean_a += value(a, i);
        mean_b += value(b, i);
    }
    mean_a /= n;
    mean_b /= n;
    double cov = 0.0, var_a = 0.0, var_b = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double da = value(a, i) - mean_a;
        const double db = value(b, i) - mean_b;
        cov += da * db;
        var_a += da * da;
        var_b += db * db;
    }
    const double eps = 1e-12;
    if (var_a < eps && var_b < eps) {
        // both stationary: same spot counts as a perfect match
        double dist = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            const double dx = a.samples[i].x - b.samples[i].x;
            const double dy = a.samples[i].y - b.samples[i].y;
            dist += std::sqrt(dx * dx + dy * dy);
        }
        return dist / a.size() < 0.05 ? 1.0 : 0.0;
    }
    if (var_a < eps || var_b < eps) return 0.0;
    return cov / std::sqrt(var_a * var_b);
}

Origin classify_self_world(const Trajectory& predicted, const Trajectory& observed,
                           double threshold) {
    if (predicted.empty() || observed.empty())
        throw std::invalid_argument("classify_self_world: degenerate trajectory");
    return trajectory_correlation(predicted, observed) >= threshold ? Origin::self
                                                                    : Origin::world;
}

}  // namespace cogspike

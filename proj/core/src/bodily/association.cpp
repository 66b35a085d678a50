#include "cogspike/bodily/association.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cogspike {

Eigen::VectorXd encode_motor(const MotorCommand& cmd, const TwoLinkArm& arm,
                             const AssociationConfig& cfg) {
    if (cmd.joint_deltas_deg.size() != 2)
        throw std::invalid_argument("encode_motor: command needs one delta per joint");
    const int n = cfg.motor_cells_per_joint;
    Eigen::VectorXd code(2 * n);
    const double spacing = 2.0 * arm.max_delta_deg / (n - 1);
    const double sigma = cfg.motor_sigma_scale * spacing;
    for (int joint = 0; joint < 2; ++joint) {
        const double d = cmd.joint_deltas_deg[static_cast<std::size_t>(joint)];
        for (int c = 0; c < n; ++c) {
            const double center = -arm.max_delta_deg + c * spacing;
            const double z = (d - center) / sigma;
            code(joint * n + c) = std::exp(-z * z);
        }
    }
    return code;
}

int visual_cell_of(double x, double y, const AssociationConfig& cfg) {
    const double span = cfg.scene_max - cfg.scene_min;
    const auto clamp_cell = [&](double v) {
        const int c = static_cast<int>((v - cfg.scene_min) / span * cfg.visual_grid);
        return std::clamp(c, 0, cfg.visual_grid - 1);
    };
    return clamp_cell(y) * cfg.visual_grid + clamp_cell(x);
}

namespace {

std::pair<double, double> cell_center(int cell, const AssociationConfig& cfg) {
    const double span = cfg.scene_max - cfg.scene_min;
    const double step = span / cfg.visual_grid;
    const int cx = cell % cfg.visual_grid;
    const int cy = cell / cfg.visual_grid;
    return {cfg.scene_min + (cx + 0.5) * step, cfg.scene_min + (cy + 0.5) * step};
}

}  // namespace

AssociationMap learn_motor_visual(
    const std::vector<std::pair<MotorCommand, Trajectory>>& episodes, const TwoLinkArm& arm,
    const AssociationConfig& cfg) {
    if (episodes.empty()) throw std::invalid_argument("learn_motor_visual: no episodes");

    AssociationMap map;
    map.cfg = cfg;
    map.arm = arm;
    const int n_motor = 2 * cfg.motor_cells_per_joint;
    const int n_visual = cfg.visual_grid * cfg.visual_grid;
    map.weights.assign(static_cast<std::size_t>(arm.bins),
                       Eigen::MatrixXd::Zero(n_motor, n_visual));

    for (const auto& [cmd, traj] : episodes) {
        if (static_cast<int>(traj.size()) != arm.bins)
            throw std::invalid_argument("learn_motor_visual: trajectory bin count mismatch");
        const Eigen::VectorXd code = encode_motor(cmd, arm, cfg);
        for (int t = 0; t < arm.bins; ++t) {
            const auto& s = traj.samples[static_cast<std::size_t>(t)];
            const int cell = visual_cell_of(s.x, s.y, cfg);
            map.weights[static_cast<std::size_t>(t)].col(cell) += cfg.lr * code;
        }
    }
    map.episodes_trained = static_cast<int>(episodes.size());

    double total = 0.0;
    for (const auto& [cmd, traj] : episodes) {
        const Eigen::VectorXd code = encode_motor(cmd, arm, cfg);
        for (int t = 0; t < arm.bins; ++t) {
            Eigen::Index best;
            (code.transpose() * map.weights[static_cast<std::size_t>(t)]).maxCoeff(&best);
            total += code.dot(map.weights[static_cast<std::size_t>(t)].col(best));
        }
    }
    map.calibration = total / (static_cast<double>(episodes.size()) * arm.bins);
    return map;
}

TrajectoryPrediction predict_trajectory(const AssociationMap& map, const MotorCommand& cmd) {
    if (map.episodes_trained == 0)
        throw std::invalid_argument("predict_trajectory: map is untrained");
    const Eigen::VectorXd code = encode_motor(cmd, map.arm, map.cfg);

    TrajectoryPrediction out;
    out.trajectory.samples.reserve(static_cast<std::size_t>(map.arm.bins));
    double score_sum = 0.0;
    for (int t = 0; t < map.arm.bins; ++t) {
        Eigen::Index best;
        const Eigen::RowVectorXd scores =
            code.transpose() * map.weights[static_cast<std::size_t>(t)];
        const double top = scores.maxCoeff(&best);
        score_sum += top;
        // Centroid over the winning cell and its scene neighbors rather than a
        // bare argmax; recovers sub-cell positions for commands between
        // training samples without averaging across distant rival cells.
        double x = 0.0, y = 0.0, mass = 0.0;
        if (top > 0.0) {
            const int bx = static_cast<int>(best) % map.cfg.visual_grid;
            const int by = static_cast<int>(best) / map.cfg.visual_grid;
            for (int dy = -1; dy <= 1; ++dy)
                for (int dx = -1; dx <= 1; ++dx) {
                    const int nx = bx + dx, ny = by + dy;
                    if (nx < 0 || nx >= map.cfg.visual_grid || ny < 0 ||
                        ny >= map.cfg.visual_grid)
                        continue;
                    const int c = ny * map.cfg.visual_grid + nx;
                    if (scores(c) < 0.25 * top) continue;
                    const double w = std::pow(scores(c) / top, 4.0);
                    const auto [cx, cy] = cell_center(c, map.cfg);
                    x += w * cx;
                    y += w * cy;
                    mass += w;
                }
        }
        if (mass > 0.0) {
            x /= mass;
            y /= mass;
        } else {
            std::tie(x, y) = cell_center(static_cast<int>(best), map.cfg);
        }
        out.trajectory.samples.push_back({cmd.timestamp_ms + (t + 1) * map.arm.bin_ms, x, y});
    }
    out.confidence =
        map.calibration > 0.0
            ? std::clamp(score_sum / map.arm.bins / map.calibration, 0.0, 1.0)
            : 0.0;
    out.low_confidence = out.confidence < map.cfg.low_confidence_cutoff;
    return out;
}

}  // namespace cogspike

#pragma once

#include <Eigen/Dense>
#include <vector>

#include "cogspike/bodily/arm.hpp"

namespace cogspike {

// Population coders shared by trainer and readout. Motor commands map to
// Gaussian place cells per joint; visual positions to the nearest cell of a
// square grid over the scene.
struct AssociationConfig {
    int motor_cells_per_joint = 9;
    double motor_sigma_scale = 1.0;  // widths in units of cell spacing
    int visual_grid = 24;
    double scene_min = -1.2;
    double scene_max = 1.2;
    double lr = 1.0;
    double low_confidence_cutoff = 0.5;
};

// Per-time-bin Hebbian weights between the motor code and visual place
// cells. Bin-wise storage is what lets one map serve arbitrarily curved
// arcs: each bin learns where the effector is at that moment of the command.
struct AssociationMap {
    AssociationConfig cfg;
    TwoLinkArm arm;
    std::vector<Eigen::MatrixXd> weights;  // per bin, [n_motor x n_visual]
    double calibration = 0.0;              // mean winning score on training data
    int episodes_trained = 0;
};

struct TrajectoryPrediction {
    Trajectory trajectory;
    double confidence = 0.0;
    bool low_confidence = false;
};

Eigen::VectorXd encode_motor(const MotorCommand& cmd, const TwoLinkArm& arm,
                             const AssociationConfig& cfg);
int visual_cell_of(double x, double y, const AssociationConfig& cfg);

// Coincidence-window Hebbian training over (command, observed arc) episodes.
AssociationMap learn_motor_visual(
    const std::vector<std::pair<MotorCommand, Trajectory>>& episodes, const TwoLinkArm& arm,
    const AssociationConfig& cfg = {});

TrajectoryPrediction predict_trajectory(const AssociationMap& map, const MotorCommand& cmd);

}  // namespace cogspike

#pragma once

#include <Eigen/Dense>

namespace cogspike {

// Mean KL divergence of each timestep's softmax distribution from the
// softmax of the time-averaged logits. Zero exactly when every timestep
// produces the same distribution. logits is [T x classes].
double temporal_consistency_loss(const Eigen::MatrixXd& logits);

}  // namespace cogspike

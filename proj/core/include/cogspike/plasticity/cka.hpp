#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

namespace cogspike {

// Linear centered kernel alignment between two feature batches (rows =
// samples). Columns are centered internally. Returns 0 with a warning if
// either batch has no variance.
double linear_cka(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y);

// Per-timestep ingredients of the transfer loss. label_pairs[t] holds
// (source_row, target_row) index pairs whose labels match; eta[t] is the
// learnable gate logit; cls_loss[t] the externally computed classification
// loss for that step.
struct TransferLossConfig {
    std::vector<Eigen::MatrixXd> source_features;
    std::vector<Eigen::MatrixXd> target_features;
    std::vector<std::vector<std::pair<int, int>>> label_pairs;
    std::vector<double> eta;
    std::vector<double> cls_loss;
};

// L = 1 - (1/T) sum_t sigmoid(eta_t) * CKA_t + (1/T) sum_t
// (1 - sigmoid(eta_t)) * cls_t, with CKA_t evaluated over the matched rows.
double transfer_loss(const TransferLossConfig& cfg);

}  // namespace cogspike

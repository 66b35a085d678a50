#include "cogspike/plasticity/cka.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace cogspike {

double linear_cka(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y) {
    if (X.rows() != Y.rows()) throw std::invalid_argument("linear_cka: row counts differ");
    if (X.rows() < 2) throw std::invalid_argument("linear_cka: need at least 2 samples");

    const Eigen::MatrixXd Xc = X.rowwise() - X.colwise().mean();
    const Eigen::MatrixXd Yc = Y.rowwise() - Y.colwise().mean();

    const double xx = (Xc.transpose() * Xc).norm();
    const double yy = (Yc.transpose() * Yc).norm();
    if (xx == 0.0 || yy == 0.0) {
        std::fprintf(stderr, "linear_cka: zero-variance batch, returning 0\n");
        return 0.0;
    }
    const double xy = (Xc.transpose() * Yc).squaredNorm();
    return xy / (xx * yy);
}

double transfer_loss(const TransferLossConfig& cfg) {
    const std::size_t T = cfg.source_features.size();
    if (T == 0) throw std::invalid_argument("transfer_loss: no timesteps");
    if (cfg.target_features.size() != T || cfg.label_pairs.size() != T ||
        cfg.eta.size() != T || cfg.cls_loss.size() != T)
        throw std::invalid_argument("transfer_loss: per-timestep fields must share length T");

    double align_term = 0.0;
    double cls_term = 0.0;
    for (std::size_t t = 0; t < T; ++t) {
        const auto& pairs = cfg.label_pairs[t];
        if (pairs.empty()) throw std::invalid_argument("transfer_loss: no matched label pairs");
        const auto& S = cfg.source_features[t];
        const auto& G = cfg.target_features[t];

        Eigen::MatrixXd Xs(static_cast<Eigen::Index>(pairs.size()), S.cols());
        Eigen::MatrixXd Xt(static_cast<Eigen::Index>(pairs.size()), G.cols());
        for (std::size_t k = 0; k < pairs.size(); ++k) {
            const auto [i, j] = pairs[k];
            if (i < 0 || i >= S.rows() || j < 0 || j >= G.rows())
                throw std::invalid_argument("transfer_loss: label pair row out of range");
            Xs.row(static_cast<Eigen::Index>(k)) = S.row(i);
            Xt.row(static_cast<Eigen::Index>(k)) = G.row(j);
        }
        const double gate = 1.0 / (1.0 + std::exp(-cfg.eta[t]));
        align_term += gate * linear_cka(Xs, Xt);
        cls_term += (1.0 - gate) * cfg.cls_loss[t];
    }
    const auto n = static_cast<double>(T);
    return 1.0 - align_term / n + cls_term / n;
}

}  // namespace cogspike

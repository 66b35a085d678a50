#pragma once

#include <Eigen/Dense>
#include <stdexcept>

namespace cogspike {

// Combined local/global weight step: w' = w + eta*delta_local +
// beta*delta_global. The local term is typically a plasticity-rule delta,
// the global one a population-search or consolidation direction.
struct HybridUpdateParams {
    double eta = 0.0;
    double beta = 0.0;
    Eigen::MatrixXd delta_local;
    Eigen::MatrixXd delta_global;
};

inline Eigen::MatrixXd hybrid_update(const Eigen::MatrixXd& w, const HybridUpdateParams& p) {
    if (!std::isfinite(p.eta) || !std::isfinite(p.beta))
        throw std::invalid_argument("hybrid_update: rates must be finite");
    if (p.delta_local.rows() != w.rows() || p.delta_local.cols() != w.cols() ||
        p.delta_global.rows() != w.rows() || p.delta_global.cols() != w.cols())
        throw std::invalid_argument("hybrid_update: delta shape mismatch");
    if (!p.delta_local.allFinite() || !p.delta_global.allFinite())
        throw std::invalid_argument("hybrid_update: deltas must be finite");
    return w + p.eta * p.delta_local + p.beta * p.delta_global;
}

inline double hybrid_update(double w, double eta, double delta_local, double beta,
                            double delta_global) {
    HybridUpdateParams p;
    p.eta = eta;
    p.beta = beta;
    p.delta_local = Eigen::MatrixXd::Constant(1, 1, delta_local);
    p.delta_global = Eigen::MatrixXd::Constant(1, 1, delta_global);
    return hybrid_update(Eigen::MatrixXd::Constant(1, 1, w), p)(0, 0);
}

}  // namespace cogspike

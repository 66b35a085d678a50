#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "cogspike/plasticity/stdp.hpp"

namespace cogspike {

// Per-synapse eligibility between one pre and one post population. The
// pre/post activity traces implement the STDP window incrementally: a pair
// separated by k steps contributes exactly stdp_delta(k*dt) to the synapse's
// eligibility.
struct EligibilityTrace {
    Eigen::MatrixXd values;     // [n_pre x n_post]
    Eigen::VectorXd pre_trace;  // decays with tau_plus
    Eigen::VectorXd post_trace; // decays with tau_minus
    double tau_e_ms = 200.0;

    static EligibilityTrace zeros(Eigen::Index n_pre, Eigen::Index n_post,
                                  double tau_e_ms = 200.0) {
        EligibilityTrace t;
        t.values = Eigen::MatrixXd::Zero(n_pre, n_post);
        t.pre_trace = Eigen::VectorXd::Zero(n_pre);
        t.post_trace = Eigen::VectorXd::Zero(n_post);
        t.tau_e_ms = tau_e_ms;
        return t;
    }
};

// One step: decay everything, credit pre-before-post pairs, debit
// post-before-pre pairs, then register this step's spikes. Registering last
// makes simultaneous pairs contribute 0, matching stdp_delta.
inline void update_eligibility(EligibilityTrace& trace,
                               const std::vector<std::uint32_t>& pre_spikes,
                               const std::vector<std::uint32_t>& post_spikes,
                               const StdpParams& stdp, double dt_ms) {
    if (!(dt_ms > 0.0)) throw std::invalid_argument("update_eligibility: dt must be positive");
    if (!(trace.tau_e_ms > 0.0))
        throw std::invalid_argument("update_eligibility: tau_e must be positive");
    trace.values *= std::exp(-dt_ms / trace.tau_e_ms);
    trace.pre_trace *= std::exp(-dt_ms / stdp.tau_plus_ms);
    trace.post_trace *= std::exp(-dt_ms / stdp.tau_minus_ms);

    for (auto j : post_spikes)
        trace.values.col(j) += stdp.a_plus * trace.pre_trace;
    for (auto i : pre_spikes)
        trace.values.row(i) -= stdp.a_minus * trace.post_trace.transpose();

    for (auto i : pre_spikes) trace.pre_trace(i) += 1.0;
    for (auto j : post_spikes) trace.post_trace(j) += 1.0;
}

// Dopamine-gated conversion of eligibility into weight change. The caller
// supplies the reward prediction error; this stays agnostic about how it was
// produced.
inline Eigen::MatrixXd rstdp_apply(const Eigen::MatrixXd& weights, const EligibilityTrace& trace,
                                   double dopamine, double lr, double w_min = 0.0,
                                   double w_max = 1.0) {
    if (weights.rows() != trace.values.rows() || weights.cols() != trace.values.cols())
        throw std::invalid_argument("rstdp_apply: weight/trace shape mismatch");
    return (weights + lr * dopamine * trace.values).cwiseMax(w_min).cwiseMin(w_max);
}

}  // namespace cogspike

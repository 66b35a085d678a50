#include "cogspike/plasticity/adaptive_stdp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace cogspike {

AdaptiveStdpState AdaptiveStdpState::init(Eigen::Index n_in, Eigen::Index n_out,
                                          const AdaptiveStdpParams& p) {
    AdaptiveStdpState s;
    s.synaptic_filter = Eigen::MatrixXd::Zero(n_in, n_out);
    s.input_trace = Eigen::VectorXd::Zero(n_in);
    s.inhibition_gain = p.inhibition_init;
    s.lateral_inhibition =
        -s.inhibition_gain * (Eigen::MatrixXd::Ones(n_out, n_out) -
                              Eigen::MatrixXd::Identity(n_out, n_out));
    s.threshold_offsets = Eigen::VectorXd::Zero(n_out);
    s.rate_estimate_hz = Eigen::VectorXd::Zero(n_out);
    return s;
}

AdaptiveStdpResult apply_adaptive_stdp(const Eigen::MatrixXd& input_spikes,
                                       const Eigen::MatrixXd& weights,
                                       const AdaptiveStdpState& state,
                                       const AdaptiveStdpParams& params) {
    const Eigen::Index n_in = weights.rows();
    const Eigen::Index n_out = weights.cols();
    if (input_spikes.rows() != n_in)
        throw std::invalid_argument("apply_adaptive_stdp: input row count mismatch");
    if (state.synaptic_filter.rows() != n_in || state.synaptic_filter.cols() != n_out ||
        state.threshold_offsets.size() != n_out || state.input_trace.size() != n_in)
        throw std::invalid_argument("apply_adaptive_stdp: state shape mismatch");
    params.stdp.validate();
    params.neuron.validate();

    AdaptiveStdpResult out;
    out.weights = weights;
    out.state = state;
    out.spike_counts.assign(static_cast<std::size_t>(n_out), 0);

    const double dt = params.dt_ms;
    const Eigen::Index n_steps = input_spikes.cols();
    const double alpha = dt / params.filter_tau_ms;
    const double decay = std::exp(-dt / params.neuron.tau_m_ms);

    Eigen::VectorXd v = Eigen::VectorXd::Constant(n_out, params.neuron.v_rest);
    Eigen::VectorXd refractory = Eigen::VectorXd::Zero(n_out);
    Eigen::VectorXd inhib = Eigen::VectorXd::Zero(n_out);
    std::vector<Eigen::Index> candidates, winners;
    Eigen::Index overflow_steps = 0;

    for (Eigen::Index t = 0; t < n_steps; ++t) {
        const Eigen::VectorXd x = input_spikes.col(t);
        out.state.synaptic_filter +=
            alpha * (x.asDiagonal() * out.weights - out.state.synaptic_filter);
        out.state.input_trace += alpha * (x - out.state.input_trace);

        const Eigen::VectorXd drive =
            params.drive_gain * out.state.synaptic_filter.colwise().sum().transpose() - inhib;

        candidates.clear();
        for (Eigen::Index j = 0; j < n_out; ++j) {
            if (refractory(j) > 0.0) {
                refractory(j) = std::max(0.0, refractory(j) - dt);
                v(j) = params.neuron.v_reset;
                continue;
            }
            v(j) = params.neuron.v_rest + (v(j) - params.neuron.v_rest) * decay +
                   params.neuron.resistance * drive(j) * (1.0 - decay);
            if (v(j) >= params.neuron.v_threshold + out.state.threshold_offsets(j))
                candidates.push_back(j);
        }

        winners = candidates;
        if (static_cast<int>(winners.size()) > params.target_winners) {
            ++overflow_steps;
            std::sort(winners.begin(), winners.end(),
                      [&](Eigen::Index a, Eigen::Index b) {
                          if (v(a) != v(b)) return v(a) > v(b);
                          return a < b;
                      });
            winners.resize(static_cast<std::size_t>(params.target_winners));
        }

        inhib *= std::exp(-dt / params.inhibition_tau_ms);
        for (Eigen::Index j : winners) {
            v(j) = params.neuron.v_reset;
            refractory(j) = params.neuron.t_refractory_ms;
            out.spike_counts[static_cast<std::size_t>(j)]++;
            out.weights.col(j) += params.lr * (out.state.input_trace - out.weights.col(j));
            for (Eigen::Index k = 0; k < n_out; ++k)
                if (k != j) inhib(k) += out.state.inhibition_gain;
        }
        if (!winners.empty())
            out.weights = out.weights.cwiseMax(params.stdp.w_min).cwiseMin(params.stdp.w_max);
    }

    const double window_s = static_cast<double>(n_steps) * dt / 1000.0;
    for (Eigen::Index j = 0; j < n_out; ++j) {
        const double rate = out.spike_counts[static_cast<std::size_t>(j)] / window_s;
        out.state.rate_estimate_hz(j) = 0.7 * out.state.rate_estimate_hz(j) + 0.3 * rate;
        // balancing on the running estimate lets a neuron stay silent on
        // windows outside its receptive field
        out.state.threshold_offsets(j) = std::max(
            0.0, out.state.threshold_offsets(j) +
                     params.threshold_step * (out.state.rate_estimate_hz(j) -
                                              params.target_rate_hz));
    }

    if (overflow_steps > 0)
        out.state.inhibition_gain *= 1.0 + params.inhibition_adapt;
    else
        out.state.inhibition_gain =
            std::max(0.1, out.state.inhibition_gain * (1.0 - 0.1 * params.inhibition_adapt));
    out.state.lateral_inhibition =
        -out.state.inhibition_gain * (Eigen::MatrixXd::Ones(n_out, n_out) -
                                      Eigen::MatrixXd::Identity(n_out, n_out));

    return out;
}

}  // namespace cogspike

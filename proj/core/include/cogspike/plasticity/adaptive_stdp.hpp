#pragma once

#include <Eigen/Dense>
#include <vector>

#include "cogspike/plasticity/stdp.hpp"
#include "cogspike/snn/neuron.hpp"

namespace cogspike {

// Unsupervised feature layer: one excitatory population reading a binary
// input stream, with three stabilizers on top of STDP. Synaptic filters
// low-pass the per-synapse current, lateral inhibition lets only the
// strongest responders through, and per-neuron threshold offsets nudge every
// cell toward the target rate.
struct AdaptiveStdpParams {
    StdpParams stdp;
    NeuronParams neuron;
    double dt_ms = 1.0;
    double filter_tau_ms = 30.0;       // synaptic current filter
    double lr = 0.08;                  // pull of weights toward the filtered input
    double drive_gain = 4.0;           // scales summed filtered current
    double target_rate_hz = 5.0;
    double threshold_step = 0.02;      // offset change per window per Hz of error
    int target_winners = 1;            // simultaneous spikes allowed per step
    double inhibition_init = 2.0;
    double inhibition_adapt = 0.1;
    double inhibition_tau_ms = 20.0;   // decay of the suppression current
};

struct AdaptiveStdpState {
    Eigen::MatrixXd synaptic_filter;      // [n_in x n_out] filtered current
    Eigen::VectorXd input_trace;          // [n_in] filtered input activity
    Eigen::MatrixXd lateral_inhibition;   // [n_out x n_out], off-diagonal <= 0
    Eigen::VectorXd threshold_offsets;    // [n_out], >= 0
    Eigen::VectorXd rate_estimate_hz;     // [n_out] EMA over windows
    double inhibition_gain = 1.0;

    static AdaptiveStdpState init(Eigen::Index n_in, Eigen::Index n_out,
                                  const AdaptiveStdpParams& p);
};

struct AdaptiveStdpResult {
    Eigen::MatrixXd weights;
    AdaptiveStdpState state;
    std::vector<int> spike_counts;  // per output neuron, this window
};

// Presents one window of input spikes (binary [n_in x n_steps]) and returns
// updated weights and stabilizer state. Weight updates happen only on output
// spikes, moving the winner's afferents toward the current input trace.
AdaptiveStdpResult apply_adaptive_stdp(const Eigen::MatrixXd& input_spikes,
                                       const Eigen::MatrixXd& weights,
                                       const AdaptiveStdpState& state,
                                       const AdaptiveStdpParams& params);

}  // namespace cogspike

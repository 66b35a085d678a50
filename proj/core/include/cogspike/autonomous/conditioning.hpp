#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cogspike/snn/network.hpp"

namespace cogspike {

// Cerebellar-style associative circuit. Stimulus channels relay through pn
// (mossy input driving the output nucleus directly) and gc (granule layer
// driving pu). pu fires tonically and clamps ipn silent; conditioning
// potentiates pn->ipn and depresses gc->pu, so the stimulus both drives ipn
// and pauses pu. io relays the reinforcer: it burst-drives ipn (the reflex
// path) and its climbing-fiber projection onto pu carries only the teaching
// signal, never current.
struct ConditioningConfig {
    int channels = 3;          // distinct stimulus identities
    int pn_per_channel = 10;
    int gc_per_channel = 40;
    int pu_size = 20;
    int ipn_size = 10;
    int io_size = 5;

    double stimulus_rate_hz = 100.0;
    double lead_ms = 100.0;       // silence before stimulus onset
    double reinforcer_ms = 20.0;  // io burst duration
    double tail_ms = 80.0;

    double pu_bias = 1.25;
    double ipn_bias = 0.9;
    double gc_pu_base = 0.25;          // granule drive at zero acquisition
    double gc_pu_interneuron = 0.125;  // fixed feedforward inhibition
    double pn_ipn_full = 0.5;          // pn->ipn synapse at full strength
    double pu_ipn_weight = -0.4;
    double io_ipn_weight = 1.2;

    double lr_acquire = 0.12;
    double lr_extinguish = 0.18;
    double lr_unextinguish = 0.45;  // extinction removed by relearning
    double extinction_recovery_tau_h = 8.0;  // extinction fades over rest

    // interval eligibility: zero outside [min, max], full inside the plateau
    double window_min_ms = 30.0;
    double window_plateau_lo_ms = 60.0;
    double window_plateau_hi_ms = 550.0;
    double window_max_ms = 750.0;
};

struct TrialTrace {
    double cr = 0.0;             // normalized output response before reinforcer
    double ur_spikes = 0.0;      // output response during/after reinforcer
    double pu_rate_hz = 0.0;     // Purkinje rate inside the stimulus window
    double ipn_pre_spikes = 0.0; // raw output spike count before reinforcer
};

class ConditioningCircuit {
public:
    explicit ConditioningCircuit(const ConditioningConfig& cfg = {}, std::uint64_t seed = 0);

    // Runs one trial with the given stimulus channels; the reinforcer (if
    // present) arrives interval_ms after stimulus onset. Returns the
    // conditioned-response strength measured before reinforcer onset.
    // learn = false probes the circuit without changing it.
    double trial(const std::vector<int>& stimulus_channels, bool reinforcer, double interval_ms,
                 bool learn = true);

    // Unpaired rest period; extinction memory decays, acquisition persists.
    void rest(double hours);

    double acquisition(int channel) const;
    double extinction(int channel) const;
    const TrialTrace& last_trace() const { return last_; }
    const ConditioningConfig& config() const { return cfg_; }
    const Network& network() const { return net_; }

private:
    void refresh_weights();
    double interval_eligibility(double interval_ms) const;
    TrialTrace simulate_trial(const std::vector<int>& stimulus_channels, bool reinforcer,
                              double interval_ms);

    ConditioningConfig cfg_;
    Network net_;
    std::vector<double> pu_bias_, ipn_bias_;  // per-neuron, desynchronizes firing
    std::vector<double> acq_, ext_;
    std::vector<std::uint32_t> pn_ipn_proj_, gc_pu_proj_;
    double cr_per_ms_full_ = 1.0;  // calibration: output spikes per ms at full strength
    std::uint64_t seed_ = 0;
    std::uint64_t trial_counter_ = 0;
    TrialTrace last_;
};

// Single-channel wrapper matching the classic protocol vocabulary.
double conditioning_trial(ConditioningCircuit& circuit, bool cs, bool us, double interval_ms);

struct PhenomenonResult {
    std::string name;
    bool passed = false;
    std::map<std::string, double> metrics;
    std::vector<double> cr_trace;
};

// Scripted protocols with their defining inequalities:
//   acquisition, extinction, reacquisition-savings, spontaneous-recovery,
//   blocking, conditioned-inhibition
PhenomenonResult run_phenomenon(const std::string& name, const ConditioningConfig& cfg,
                                std::uint64_t seed);

std::vector<std::string> phenomenon_names();

}  // namespace cogspike

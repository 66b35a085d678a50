#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "cogspike/continual/network.hpp"

namespace cogspike {

// Per-weight readout importance. `raw` accumulates hidden spike count times
// rectified readout score over the task data; `values` is raw rescaled so the
// strongest weight sits at `scale`, which makes the 1/(1 + importance) update
// factor shrink to 1/(1 + scale) there.
struct ImportanceMap {
    Eigen::MatrixXd raw;
    Eigen::MatrixXd values;
};

struct ImportanceConfig {
    double window_ms = 250.0;
    int passes = 1;       // full sweeps over the training split
    double scale = 19.0;  // top weight updates at most 1/(1 + scale) as fast
};

// Hebbian co-activity sweep over the task's training split. A synapse whose
// presynaptic neuron never fires together with a positive readout score keeps
// exactly zero importance.
ImportanceMap wake_importance(const ContinualNetwork& net, const TaskSpec& task,
                              const ImportanceConfig& cfg = {});

// Class-mean input rates, the replay pattern stored after training a task.
struct MemorySnapshot {
    int class_label = 0;  // global column index
    Eigen::VectorXd input_rates_hz;
};

MemorySnapshot make_snapshot(const ContinualNetwork& net, const TaskSpec& task, int local_class);

struct SleepConfig {
    double lr = 0.05;
    double window_ms = 250.0;
    double target_rate_hz = 20.0;  // homeostatic set point for mean hidden rate
    double tolerance = 0.1;        // relative band around the set point
    int max_homeostasis_iters = 30;
    int replays_per_class = 6;
    double replay_jitter_hz = 4.0;  // variability around the stored means
    bool importance_scaling = false;  // consolidation is the sanctioned path to old readouts
    std::uint64_t seed = 99;
};

struct SleepReport {
    double mean_rate_hz = 0.0;  // after homeostasis, measured on the replays
    double input_gain = 1.0;
    int homeostasis_iters = 0;
};

// Offline replay of the stored class means: first a global input-gain
// adjustment pulls the mean hidden rate onto the homeostatic set point, then
// every snapshot class's readout column is refreshed against the replayed
// activity. Zero epochs leave the network untouched.
SleepReport sleep_consolidate(ContinualNetwork& net, const std::vector<MemorySnapshot>& snapshots,
                              int epochs, const SleepConfig& cfg = {});

}  // namespace cogspike

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "cogspike/rng.hpp"
#include "cogspike/snn/spike_train.hpp"

namespace cogspike {

struct TaskSpec {
    int id = 0;
    int n_classes = 4;
    std::uint64_t pattern_seed = 0;
    int train_per_class = 30;
    int test_per_class = 20;
};

struct GrowthConfig {
    int neurons_per_task = 64;
    int input_fanin = 10;           // input channels per new neuron
    int reuse_fanin = 4;           // incoming edges from earlier neurons
    int prune_inactivity_epochs = 5;
    double prune_rate_threshold_hz = 5.0;
    double importance_guard = 1.0;  // neurons above this importance are never pruned
};

struct PruneStats {
    int examined = 0;
    int pruned = 0;
    int kept_important = 0;
};

struct TrainConfig {
    int epochs = 20;
    double lr = 0.05;
    double window_ms = 250.0;
    bool restrict_to_task_columns = true;  // naive baseline turns this off
    bool importance_scaling = true;
};

struct TrainResult {
    std::vector<Eigen::VectorXd> epoch_rates_hz;  // per-epoch mean hidden rates
    double train_accuracy = 0.0;
};

// Benchmark patterns: per-class Poisson rate prototypes with two rate levels
// plus per-sample Gaussian jitter. Sample indices below train_per_class are
// the training split; the test split follows it.
Eigen::VectorXd class_prototype_rates(const TaskSpec& task, int local_class, int n_inputs);
SpikeTrain sample_spike_train(const TaskSpec& task, int local_class, int sample_index,
                              int n_inputs, double window_ms);

// Reservoir of grown spiking neurons plus a linear readout over their spike
// counts. Tasks claim disjoint global class labels in registration order;
// each growth wave wires new neurons to random input channels and to a few
// earlier neurons, so old pathways feed new ones but are never rewired.
class ContinualNetwork {
public:
    explicit ContinualNetwork(int n_inputs = 24, int base_neurons = 0, std::uint64_t seed = 0);

    int n_inputs() const { return n_inputs_; }
    int hidden_total() const { return static_cast<int>(neurons_.size()); }
    int hidden_active() const;
    int n_classes() const { return static_cast<int>(readout_.cols()); }

    void ensure_task(const TaskSpec& task);  // registers classes, idempotent
    bool task_known(int id) const { return class_offset_.count(id) != 0; }
    bool task_grown(int id) const;
    bool task_trained(int id) const;
    void mark_trained(int id);
    int class_offset(int id) const;
    std::vector<int> trained_columns() const;

    // spike counts of every grown neuron (zero where pruned) for one input
    Eigen::VectorXd features(const SpikeTrain& input, double window_ms) const;

    Eigen::MatrixXd& readout() { return readout_; }
    const Eigen::MatrixXd& readout() const { return readout_; }

    const Eigen::MatrixXd& importance() const { return importance_; }
    void raise_importance(const Eigen::MatrixXd& values);

    double input_gain() const { return input_gain_; }
    void set_input_gain(double gain);

    int grow(const TaskSpec& task, const GrowthConfig& cfg, std::uint64_t seed);  // returns reuse edges
    PruneStats prune(const std::vector<Eigen::VectorXd>& activity_log, const GrowthConfig& cfg);

    void log_accuracies(std::vector<double> per_task);
    const std::vector<std::vector<double>>& accuracy_log() const { return accuracy_log_; }

private:
    struct HiddenNeuron {
        int task = -1;
        bool active = true;
        std::vector<std::pair<int, double>> input_w;  // channel -> weight
        std::vector<std::pair<int, double>> reuse_w;  // earlier neuron -> weight
    };

    struct SimCache;
    const SimCache& sim() const;
    void grow_wave(int task_id, const GrowthConfig& cfg, Rng rng);

    int n_inputs_;
    std::vector<HiddenNeuron> neurons_;
    Eigen::MatrixXd readout_;     // hidden_total x n_classes
    Eigen::MatrixXd importance_;  // same shape, cumulative across tasks
    double input_gain_ = 1.0;
    std::map<int, int> class_offset_;
    std::map<int, bool> grown_;
    std::map<int, bool> trained_;
    std::vector<std::vector<double>> accuracy_log_;
    mutable std::shared_ptr<SimCache> cache_;
};

// Adds a task's pathway; rejects a second growth for the same id.
int grow_for_task(ContinualNetwork& net, const TaskSpec& task, const GrowthConfig& cfg,
                  std::uint64_t seed);

// Readout training on cached spike-count features, one-vs-all delta rule.
// Weight updates are scaled by 1/(1 + importance) when enabled, and only the
// task's own columns move unless the naive all-column mode is requested.
TrainResult train_on_task(ContinualNetwork& net, const TaskSpec& task, const TrainConfig& cfg = {});

// Removes grown neurons whose rate stayed under the threshold for the last
// prune_inactivity_epochs epochs, unless importance marks them as carrying an
// old task.
PruneStats prune_inactive(ContinualNetwork& net, const std::vector<Eigen::VectorXd>& activity_log,
                          const GrowthConfig& cfg);

// Accuracy in percentage points on the task's test split, argmax over every
// trained class column.
double task_accuracy(const ContinualNetwork& net, const TaskSpec& task, double window_ms = 250.0);

}  // namespace cogspike

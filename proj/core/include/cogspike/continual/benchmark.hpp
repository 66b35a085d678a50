#pragma once

#include <cstdint>
#include <vector>

#include "cogspike/continual/consolidate.hpp"
#include "cogspike/continual/network.hpp"

namespace cogspike {

// Three four-class tasks with disjoint labels; the pattern seeds derive from
// the benchmark seed so different seeds exercise different class layouts.
std::vector<TaskSpec> make_benchmark_tasks(std::uint64_t seed);

struct PipelineConfig {
    GrowthConfig growth;
    TrainConfig train;
    SleepConfig sleep;
    int sleep_epochs = 60;
    int base_neurons = 0;  // pre-grown pool for the no-growth baseline
    bool grow = true;
    bool prune = true;
    bool importance = true;
    bool sleep_enabled = true;
};

PipelineConfig full_method_config();
PipelineConfig naive_config();

struct ForgettingReport {
    // accuracy[i][j]: task j right after training stage i, -1 before task j
    // has been trained
    std::vector<std::vector<double>> accuracy;
    double average_forgetting = 0.0;  // mean over tasks of peak minus final
};

// Forgetting from the network's logged per-stage accuracies plus a fresh
// evaluation of every task; requires all listed tasks to be trained.
ForgettingReport evaluate_forgetting(const ContinualNetwork& net,
                                     const std::vector<TaskSpec>& tasks);

struct ContinualBenchmarkResult {
    ForgettingReport report;
    std::vector<int> hidden_after_growth;   // per task
    std::vector<int> hidden_after_prune;    // per task
    std::vector<int> reuse_edges;           // per task
    std::vector<PruneStats> prune_stats;    // per task
    std::vector<double> prune_drop;         // current-task accuracy lost to pruning
    std::vector<double> sleep_min_old_delta;  // worst old-task change per sleep, +inf if no old task
    std::vector<double> sleep_mean_rate_hz;   // homeostatic readback per sleep
};

// Sequential run over the benchmark tasks with the configured pipeline:
// grow, train, prune, consolidate, then log accuracy on everything trained
// so far.
ContinualBenchmarkResult run_continual_benchmark(std::uint64_t seed, const PipelineConfig& cfg);

}  // namespace cogspike

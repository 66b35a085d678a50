#include "cogspike/continual/benchmark.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "cogspike/rng.hpp"

namespace cogspike {

std::vector<TaskSpec> make_benchmark_tasks(std::uint64_t seed) {
    std::vector<TaskSpec> tasks;
    Rng rng = Rng(seed).substream("patterns");
    for (int id = 0; id < 3; ++id) {
        TaskSpec task;
        task.id = id;
        task.pattern_seed = rng.substream(static_cast<std::uint64_t>(id)).next_u64();
        tasks.push_back(task);
    }
    return tasks;
}

PipelineConfig full_method_config() { return {}; }

PipelineConfig naive_config() {
    PipelineConfig cfg;
    cfg.base_neurons = 192;
    cfg.grow = false;
    cfg.prune = false;
    cfg.importance = false;
    cfg.sleep_enabled = false;
    cfg.train.restrict_to_task_columns = false;
    cfg.train.importance_scaling = false;
    return cfg;
}

ForgettingReport evaluate_forgetting(const ContinualNetwork& net,
                                     const std::vector<TaskSpec>& tasks) {
    if (tasks.empty()) throw std::invalid_argument("forgetting: need at least one task");
    for (const auto& task : tasks)
        if (!net.task_trained(task.id))
            throw std::invalid_argument("forgetting: every task must be trained");

    ForgettingReport report;
    report.accuracy = net.accuracy_log();
    std::vector<double> final_acc;
    final_acc.reserve(tasks.size());
    for (const auto& task : tasks) final_acc.push_back(task_accuracy(net, task));
    report.accuracy.push_back(final_acc);

    double total = 0.0;
    for (std::size_t j = 0; j < tasks.size(); ++j) {
        double peak = final_acc[j];
        for (const auto& row : report.accuracy)
            if (j < row.size() && row[j] >= 0.0) peak = std::max(peak, row[j]);
        total += peak - final_acc[j];
    }
    report.average_forgetting = total / static_cast<double>(tasks.size());
    return report;
}

ContinualBenchmarkResult run_continual_benchmark(std::uint64_t seed, const PipelineConfig& cfg) {
    const std::vector<TaskSpec> tasks = make_benchmark_tasks(seed);
    const Rng root(seed);

    ContinualNetwork net(32, cfg.base_neurons, Rng(seed).substream("net").next_u64());
    std::vector<MemorySnapshot> snapshots;
    ContinualBenchmarkResult result;

    for (std::size_t t = 0; t < tasks.size(); ++t) {
        const TaskSpec& task = tasks[t];

        int reuse = 0;
        if (cfg.grow)
            reuse = grow_for_task(net, task, cfg.growth,
                                  root.substream("grow").substream(t).next_u64());
        result.reuse_edges.push_back(reuse);
        result.hidden_after_growth.push_back(net.hidden_active());

        TrainConfig train_cfg = cfg.train;
        train_cfg.importance_scaling = cfg.importance && train_cfg.importance_scaling;
        const TrainResult trained = train_on_task(net, task, train_cfg);

        if (cfg.importance) net.raise_importance(wake_importance(net, task).values);

        double prune_drop = 0.0;
        PruneStats stats;
        if (cfg.prune) {
            const double before = task_accuracy(net, task, train_cfg.window_ms);
            stats = prune_inactive(net, trained.epoch_rates_hz, cfg.growth);
            const double after = task_accuracy(net, task, train_cfg.window_ms);
            prune_drop = before - after;
        }
        result.prune_stats.push_back(stats);
        result.prune_drop.push_back(prune_drop);
        result.hidden_after_prune.push_back(net.hidden_active());

        for (int c = 0; c < task.n_classes; ++c) snapshots.push_back(make_snapshot(net, task, c));

        double min_old_delta = std::numeric_limits<double>::infinity();
        double mean_rate = 0.0;
        if (cfg.sleep_enabled) {
            std::vector<double> before;
            for (std::size_t j = 0; j < t; ++j)
                before.push_back(task_accuracy(net, tasks[j], train_cfg.window_ms));
            SleepConfig sleep_cfg = cfg.sleep;
            sleep_cfg.seed = root.substream("sleep").substream(t).next_u64();
            const SleepReport sleep = sleep_consolidate(net, snapshots, cfg.sleep_epochs, sleep_cfg);
            mean_rate = sleep.mean_rate_hz;
            for (std::size_t j = 0; j < t; ++j) {
                const double after = task_accuracy(net, tasks[j], train_cfg.window_ms);
                min_old_delta = std::min(min_old_delta, after - before[j]);
            }
        }
        result.sleep_min_old_delta.push_back(min_old_delta);
        result.sleep_mean_rate_hz.push_back(mean_rate);

        std::vector<double> row;
        for (const auto& other : tasks)
            row.push_back(net.task_trained(other.id) ? task_accuracy(net, other, train_cfg.window_ms)
                                                     : -1.0);
        net.log_accuracies(row);
    }

    result.report = evaluate_forgetting(net, tasks);
    return result;
}

}  // namespace cogspike

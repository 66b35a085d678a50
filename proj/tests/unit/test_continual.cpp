#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "cogspike/continual/benchmark.hpp"
#include "cogspike/continual/consolidate.hpp"
#include "cogspike/continual/network.hpp"

using namespace cogspike;

namespace {

TaskSpec small_task(int id, std::uint64_t pattern_seed) {
    TaskSpec task;
    task.id = id;
    task.pattern_seed = pattern_seed;
    task.train_per_class = 12;
    task.test_per_class = 8;
    return task;
}

SpikeTrain probe_input(const TaskSpec& task, int n_inputs) {
    return sample_spike_train(task, 0, 0, n_inputs, 250.0);
}

}  // namespace

TEST_CASE("task patterns: deterministic, class-specific, split-disjoint") {
    const TaskSpec task = small_task(0, 77);

    CHECK(class_prototype_rates(task, 1, 32) == class_prototype_rates(task, 1, 32));
    CHECK(sample_spike_train(task, 2, 5, 32, 250.0) == sample_spike_train(task, 2, 5, 32, 250.0));

    bool any_differs = false;
    const Eigen::VectorXd p0 = class_prototype_rates(task, 0, 32);
    for (int c = 1; c < task.n_classes; ++c)
        if (class_prototype_rates(task, c, 32) != p0) any_differs = true;
    CHECK(any_differs);

    CHECK(sample_spike_train(task, 0, 0, 32, 250.0) != sample_spike_train(task, 0, 1, 32, 250.0));

    CHECK_THROWS_AS((void)class_prototype_rates(task, 4, 32), std::invalid_argument);
    CHECK_THROWS_AS((void)sample_spike_train(task, 0, -1, 32, 250.0), std::invalid_argument);
}

TEST_CASE("growth: size bookkeeping, reuse wiring, duplicate rejection") {
    ContinualNetwork net(32, 16, 5);
    CHECK(net.hidden_total() == 16);

    GrowthConfig cfg;
    cfg.neurons_per_task = 24;
    const TaskSpec t0 = small_task(0, 11);
    const int reuse0 = grow_for_task(net, t0, cfg, 42);
    CHECK(net.hidden_total() == 16 + 24);
    CHECK(reuse0 > 0);  // the base pool counts as earlier neurons

    ContinualNetwork fresh(32, 0, 5);
    CHECK(grow_for_task(fresh, t0, cfg, 42) == 0);  // nothing earlier to reuse
    const TaskSpec t1 = small_task(1, 12);
    CHECK(grow_for_task(fresh, t1, cfg, 43) > 0);
    CHECK(fresh.hidden_total() == 48);

    CHECK_THROWS_AS(grow_for_task(fresh, t0, cfg, 44), std::invalid_argument);

    GrowthConfig bad = cfg;
    bad.neurons_per_task = 0;
    CHECK_THROWS_AS(grow_for_task(net, small_task(7, 9), bad, 1), std::invalid_argument);
}

TEST_CASE("growth: fixed seed gives identical wiring twice") {
    const TaskSpec t0 = small_task(0, 21);
    const TaskSpec t1 = small_task(1, 22);
    GrowthConfig cfg;
    cfg.neurons_per_task = 20;

    ContinualNetwork a(32, 0, 0);
    ContinualNetwork b(32, 0, 0);
    grow_for_task(a, t0, cfg, 7);
    grow_for_task(b, t0, cfg, 7);
    grow_for_task(a, t1, cfg, 8);
    grow_for_task(b, t1, cfg, 8);

    const SpikeTrain in = probe_input(t0, 32);
    CHECK((a.features(in, 250.0) - b.features(in, 250.0)).norm() == 0.0);

    ContinualNetwork c(32, 0, 0);
    grow_for_task(c, t0, cfg, 9);  // different seed, different wiring
    CHECK((a.features(in, 250.0) - c.features(in, 250.0)).norm() != 0.0);
}

TEST_CASE("growth: old readout columns untouched by a new wave") {
    ContinualNetwork net(32, 0, 0);
    const TaskSpec t0 = small_task(0, 31);
    grow_for_task(net, t0, {}, 1);
    train_on_task(net, t0);
    const Eigen::MatrixXd before = net.readout();

    const TaskSpec t1 = small_task(1, 32);
    grow_for_task(net, t1, {}, 2);
    CHECK((net.readout().topLeftCorner(before.rows(), before.cols()) - before).norm() == 0.0);
    CHECK(net.readout().bottomRows(net.hidden_total() - before.rows()).norm() == 0.0);
}

TEST_CASE("training: old-task readouts never move during a new task") {
    ContinualNetwork net(32, 0, 0);
    const TaskSpec t0 = small_task(0, 41);
    const TaskSpec t1 = small_task(1, 42);
    grow_for_task(net, t0, {}, 1);
    train_on_task(net, t0);
    grow_for_task(net, t1, {}, 2);
    const Eigen::MatrixXd old_cols = net.readout().leftCols(4);

    train_on_task(net, t1);
    CHECK((net.readout().leftCols(4) - old_cols).norm() == 0.0);

    // the naive all-column mode is exactly what breaks this freeze
    TrainConfig naive;
    naive.restrict_to_task_columns = false;
    naive.epochs = 1;
    train_on_task(net, t1, naive);
    CHECK((net.readout().leftCols(4) - old_cols).norm() != 0.0);
}

TEST_CASE("prune: trivial outcomes and precondition checks") {
    ContinualNetwork net(32, 0, 0);
    grow_for_task(net, small_task(0, 51), {}, 3);
    const int h = net.hidden_total();

    GrowthConfig cfg;
    std::vector<Eigen::VectorXd> busy(cfg.prune_inactivity_epochs,
                                      Eigen::VectorXd::Constant(h, 40.0));
    PruneStats none = prune_inactive(net, busy, cfg);
    CHECK(none.examined == h);
    CHECK(none.pruned == 0);
    CHECK(net.hidden_active() == h);

    std::vector<Eigen::VectorXd> one_silent = busy;
    for (auto& epoch : one_silent) epoch[3] = 0.0;
    PruneStats one = prune_inactive(net, one_silent, cfg);
    CHECK(one.pruned == 1);
    CHECK(net.hidden_active() == h - 1);

    std::vector<Eigen::VectorXd> short_log(cfg.prune_inactivity_epochs - 1,
                                           Eigen::VectorXd::Constant(h, 40.0));
    CHECK_THROWS_AS(prune_inactive(net, short_log, cfg), std::invalid_argument);

    std::vector<Eigen::VectorXd> misshaped(cfg.prune_inactivity_epochs,
                                           Eigen::VectorXd::Constant(h + 2, 40.0));
    CHECK_THROWS_AS(prune_inactive(net, misshaped, cfg), std::invalid_argument);
}

TEST_CASE("prune: a quiet neuron marked important survives") {
    ContinualNetwork net(32, 0, 0);
    const TaskSpec t0 = small_task(0, 61);
    grow_for_task(net, t0, {}, 4);
    net.ensure_task(t0);
    const int h = net.hidden_total();

    GrowthConfig cfg;
    Eigen::MatrixXd marks = Eigen::MatrixXd::Zero(h, net.n_classes());
    marks(5, 0) = cfg.importance_guard + 1.0;
    net.raise_importance(marks);

    std::vector<Eigen::VectorXd> log(cfg.prune_inactivity_epochs,
                                     Eigen::VectorXd::Constant(h, 40.0));
    for (auto& epoch : log) {
        epoch[5] = 0.0;
        epoch[6] = 0.0;
    }
    PruneStats stats = prune_inactive(net, log, cfg);
    CHECK(stats.pruned == 1);          // neuron 6 goes
    CHECK(stats.kept_important == 1);  // neuron 5 stays
    CHECK(net.hidden_active() == h - 1);
}

TEST_CASE("prune: a third of a wave goes for under two points on the benchmark") {
    const auto tasks = make_benchmark_tasks(1);
    ContinualNetwork net(32, 0, Rng(1).substream("net").next_u64());
    GrowthConfig cfg;
    grow_for_task(net, tasks[0], cfg, 42);
    const TrainResult trained = train_on_task(net, tasks[0]);
    net.raise_importance(wake_importance(net, tasks[0]).values);

    const double before = task_accuracy(net, tasks[0]);
    const PruneStats stats = prune_inactive(net, trained.epoch_rates_hz, cfg);
    const double after = task_accuracy(net, tasks[0]);

    CHECK(stats.pruned >= cfg.neurons_per_task / 5);
    CHECK(std::abs(before - after) <= 2.0);
    CHECK(net.hidden_active() == net.hidden_total() - stats.pruned);
}

TEST_CASE("importance: zero exactly where nothing co-fired") {
    ContinualNetwork net(32, 0, 0);
    const TaskSpec t0 = small_task(0, 71);
    grow_for_task(net, t0, {}, 5);
    train_on_task(net, t0);

    const ImportanceMap map = wake_importance(net, t0);
    CHECK(map.raw.minCoeff() >= 0.0);
    CHECK(map.values.minCoeff() >= 0.0);
    CHECK(map.raw.maxCoeff() > 0.0);

    // count spikes over the full split; silent neurons must have zero rows
    Eigen::VectorXd counts = Eigen::VectorXd::Zero(net.hidden_total());
    for (int c = 0; c < t0.n_classes; ++c)
        for (int k = 0; k < t0.train_per_class; ++k)
            counts += net.features(sample_spike_train(t0, c, k, 32, 250.0), 250.0);
    int silent = 0;
    for (int i = 0; i < net.hidden_total(); ++i) {
        if (counts[i] > 0.0) continue;
        silent++;
        CHECK(map.raw.row(i).maxCoeff() == 0.0);
        CHECK(map.values.row(i).maxCoeff() == 0.0);
    }
    CHECK(silent > 0);  // the weak tail of the wave never fires

    CHECK_THROWS_AS((void)wake_importance(ContinualNetwork(32, 8, 0), t0),
                    std::invalid_argument);
}

TEST_CASE("importance: co-activity doubles with data duration") {
    ContinualNetwork net(32, 0, 0);
    const TaskSpec t0 = small_task(0, 81);
    grow_for_task(net, t0, {}, 6);
    train_on_task(net, t0);

    ImportanceConfig one;
    ImportanceConfig two;
    two.passes = 2;
    const double sum1 = wake_importance(net, t0, one).raw.sum();
    const double sum2 = wake_importance(net, t0, two).raw.sum();
    CHECK(sum2 / sum1 == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("importance: protected weights barely move under further training") {
    ContinualNetwork net(32, 0, 0);
    const TaskSpec t0 = small_task(0, 91);
    grow_for_task(net, t0, {}, 7);
    train_on_task(net, t0);

    ImportanceConfig strong;
    strong.scale = 99.0;
    const ImportanceMap map = wake_importance(net, t0, strong);

    // single-sample probe task: one shared error term, so the update ratio
    // is exactly 1/(1+importance) per weight
    TaskSpec probe;
    probe.id = 1;
    probe.n_classes = 1;
    probe.pattern_seed = 55;
    probe.train_per_class = 1;
    probe.test_per_class = 1;

    TrainConfig scaled;
    scaled.epochs = 1;
    scaled.restrict_to_task_columns = false;
    TrainConfig unscaled = scaled;
    unscaled.importance_scaling = false;

    ContinualNetwork constrained = net;
    constrained.raise_importance(map.values);
    train_on_task(constrained, probe, scaled);
    ContinualNetwork free = net;
    train_on_task(free, probe, unscaled);

    const Eigen::MatrixXd d_con =
        (constrained.readout().leftCols(4) - net.readout()).cwiseAbs();
    const Eigen::MatrixXd d_free =
        (free.readout().leftCols(4) - net.readout()).cwiseAbs();
    int compared = 0;
    for (int i = 0; i < d_con.rows(); ++i) {
        for (int c = 0; c < d_con.cols(); ++c) {
            if (d_free(i, c) < 1e-9) continue;
            const double expected = d_free(i, c) / (1.0 + map.values(i, c));
            CHECK(d_con(i, c) == doctest::Approx(expected).epsilon(1e-9));
            if (map.values(i, c) >= 0.5 * strong.scale) {
                CHECK(d_con(i, c) <= 0.1 * d_free(i, c));
                compared++;
            }
        }
    }
    CHECK(compared > 0);

    // the probe column itself carries zero importance: both runs move it alike
    CHECK((constrained.readout().col(4) - free.readout().col(4)).norm() == 0.0);

    // unprotected weights move the same whether scaling is on or off
    ContinualNetwork null_scaled = net;
    TrainConfig pass;
    pass.epochs = 1;
    TrainConfig plain = pass;
    plain.importance_scaling = false;
    ContinualNetwork replain = net;
    train_on_task(null_scaled, t0, pass);  // importance all zero: factor is 1
    train_on_task(replain, t0, plain);
    CHECK((null_scaled.readout() - replain.readout()).norm() == doctest::Approx(0.0));
}

TEST_CASE("sleep: zero epochs is a no-op, empty snapshot store rejected") {
    ContinualNetwork net(32, 0, 0);
    const TaskSpec t0 = small_task(0, 101);
    grow_for_task(net, t0, {}, 8);
    train_on_task(net, t0);

    std::vector<MemorySnapshot> snaps;
    for (int c = 0; c < t0.n_classes; ++c) snaps.push_back(make_snapshot(net, t0, c));

    const Eigen::MatrixXd w_before = net.readout();
    const double gain_before = net.input_gain();
    sleep_consolidate(net, snaps, 0);
    CHECK((net.readout() - w_before).norm() == 0.0);
    CHECK(net.input_gain() == gain_before);

    CHECK_THROWS_AS(sleep_consolidate(net, {}, 4), std::invalid_argument);
}

TEST_CASE("sleep: homeostatic readback hits the set point, accuracy kept") {
    ContinualNetwork net(32, 0, 0);
    const TaskSpec t0 = small_task(0, 111);
    grow_for_task(net, t0, {}, 9);
    train_on_task(net, t0);
    const double before = task_accuracy(net, t0);

    std::vector<MemorySnapshot> snaps;
    for (int c = 0; c < t0.n_classes; ++c) snaps.push_back(make_snapshot(net, t0, c));

    SleepConfig cfg;
    const SleepReport report = sleep_consolidate(net, snaps, 40, cfg);
    CHECK(std::abs(report.mean_rate_hz - cfg.target_rate_hz) <=
          cfg.tolerance * cfg.target_rate_hz);
    CHECK(report.input_gain == net.input_gain());

    const double after = task_accuracy(net, t0);
    CHECK(after >= before - 1.0);
}

TEST_CASE("forgetting: single trained task scores zero") {
    ContinualNetwork net(32, 0, 0);
    const TaskSpec t0 = small_task(0, 121);
    grow_for_task(net, t0, {}, 10);
    train_on_task(net, t0);

    const ForgettingReport report = evaluate_forgetting(net, {t0});
    CHECK(report.average_forgetting == 0.0);
    CHECK(report.accuracy.back().size() == 1);

    const TaskSpec t1 = small_task(1, 122);
    CHECK_THROWS_AS((void)evaluate_forgetting(net, {t0, t1}), std::invalid_argument);
}

TEST_CASE("benchmark: growth/prune/wake/sleep beats the naive baseline") {
    for (std::uint64_t seed = 1; seed <= 2; ++seed) {
        CAPTURE(seed);
        const ContinualBenchmarkResult method = run_continual_benchmark(seed, full_method_config());
        const ContinualBenchmarkResult naive = run_continual_benchmark(seed, naive_config());

        CHECK(method.report.average_forgetting <= 5.0);
        CHECK(naive.report.average_forgetting >= 20.0);

        for (std::size_t t = 0; t < 3; ++t) {
            // size is monotone inside a task: growth adds, pruning only shrinks
            if (t > 0) CHECK(method.hidden_after_growth[t] > method.hidden_after_prune[t - 1]);
            CHECK(method.hidden_after_prune[t] <= method.hidden_after_growth[t]);
            CHECK(method.prune_drop[t] <= 2.0);
            if (std::isfinite(method.sleep_min_old_delta[t])) {
                CHECK(method.sleep_min_old_delta[t] >= -1.0);
                CHECK(method.sleep_min_old_delta[t] > 0.0);
            }
        }
        CHECK(method.reuse_edges[0] == 0);
        CHECK(method.reuse_edges[1] > 0);
        CHECK(method.reuse_edges[2] > 0);

        // every stage reports exactly the tasks trained so far
        for (std::size_t stage = 0; stage < 3; ++stage)
            for (std::size_t j = 0; j < 3; ++j)
                CHECK((method.report.accuracy[stage][j] >= 0.0) == (j <= stage));

        const ContinualBenchmarkResult again = run_continual_benchmark(seed, full_method_config());
        CHECK(again.report.accuracy == method.report.accuracy);
        CHECK(again.report.average_forgetting == method.report.average_forgetting);
    }
}

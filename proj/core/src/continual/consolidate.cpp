#include "cogspike/continual/consolidate.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "cogspike/rng.hpp"

namespace cogspike {
namespace {

SpikeTrain poisson_replay(const Eigen::VectorXd& rates_hz, double window_ms, double jitter_hz,
                          Rng rng) {
    const int steps = static_cast<int>(std::llround(window_ms));
    Eigen::VectorXd rates(rates_hz.size());
    for (int ch = 0; ch < rates_hz.size(); ++ch)
        rates[ch] = std::clamp(rates_hz[ch] + jitter_hz * rng.normal(), 0.0, 60.0);
    SpikeTrain train(static_cast<std::uint32_t>(rates_hz.size()), window_ms);
    for (int k = 0; k < steps; ++k)
        for (int ch = 0; ch < rates.size(); ++ch)
            if (rng.bernoulli(rates[ch] * 1e-3))
                train.push(static_cast<double>(k), static_cast<std::uint32_t>(ch));
    train.sort();
    return train;
}

}  // namespace

ImportanceMap wake_importance(const ContinualNetwork& net, const TaskSpec& task,
                              const ImportanceConfig& cfg) {
    if (!net.task_trained(task.id))
        throw std::invalid_argument("importance: task must be trained first");
    if (cfg.passes < 1) throw std::invalid_argument("importance: passes must be >= 1");
    if (cfg.scale < 0.0) throw std::invalid_argument("importance: scale must be >= 0");

    ImportanceMap map;
    map.raw = Eigen::MatrixXd::Zero(net.hidden_total(), net.n_classes());
    for (int pass = 0; pass < cfg.passes; ++pass) {
        for (int c = 0; c < task.n_classes; ++c) {
            for (int k = 0; k < task.train_per_class; ++k) {
                const int sample = pass * task.train_per_class + k;
                const SpikeTrain in =
                    sample_spike_train(task, c, sample, net.n_inputs(), cfg.window_ms);
                const Eigen::VectorXd f = net.features(in, cfg.window_ms);
                const double norm = f.norm();
                if (norm <= 0.0) continue;
                const Eigen::VectorXd scores = net.readout().transpose() * (f / norm);
                map.raw += f * scores.cwiseMax(0.0).transpose();
            }
        }
    }
    const double top = map.raw.maxCoeff();
    map.values = top > 0.0 ? Eigen::MatrixXd(map.raw * (cfg.scale / top))
                           : Eigen::MatrixXd::Zero(map.raw.rows(), map.raw.cols());
    return map;
}

MemorySnapshot make_snapshot(const ContinualNetwork& net, const TaskSpec& task, int local_class) {
    if (local_class < 0 || local_class >= task.n_classes)
        throw std::invalid_argument("snapshot: class index out of range");
    MemorySnapshot snap;
    snap.class_label = net.class_offset(task.id) + local_class;
    snap.input_rates_hz = class_prototype_rates(task, local_class, net.n_inputs());
    return snap;
}

SleepReport sleep_consolidate(ContinualNetwork& net, const std::vector<MemorySnapshot>& snapshots,
                              int epochs, const SleepConfig& cfg) {
    if (snapshots.empty()) throw std::invalid_argument("sleep: need at least one snapshot");
    if (epochs < 0) throw std::invalid_argument("sleep: epochs must be >= 0");
    if (!(cfg.target_rate_hz > 0.0)) throw std::invalid_argument("sleep: target rate must be > 0");
    if (cfg.replays_per_class < 1) throw std::invalid_argument("sleep: need >= 1 replay per class");
    for (const auto& snap : snapshots) {
        if (snap.input_rates_hz.size() != net.n_inputs())
            throw std::invalid_argument("sleep: snapshot channel count mismatch");
        if (snap.class_label < 0 || snap.class_label >= net.n_classes())
            throw std::invalid_argument("sleep: snapshot class out of range");
    }

    SleepReport report;
    report.input_gain = net.input_gain();
    if (epochs == 0) return report;

    const Rng root = Rng(cfg.seed).substream("sleep");
    const auto replay_train = [&](std::size_t snap_idx, int r) {
        return poisson_replay(snapshots[snap_idx].input_rates_hz, cfg.window_ms,
                              cfg.replay_jitter_hz,
                              root.substream(snap_idx).substream(static_cast<std::uint64_t>(r)));
    };
    const int n_replays = static_cast<int>(snapshots.size()) * cfg.replays_per_class;

    const auto mean_rate = [&]() {
        double sum = 0.0;
        const int active = net.hidden_active();
        if (active == 0) return 0.0;
        for (std::size_t s = 0; s < snapshots.size(); ++s)
            for (int r = 0; r < cfg.replays_per_class; ++r)
                sum += net.features(replay_train(s, r), cfg.window_ms).sum();
        return sum * (1000.0 / cfg.window_ms) / (active * n_replays);
    };

    // rate is monotone in the gain, so bracket the set point and bisect
    const auto within = [&](double r) {
        return std::abs(r - cfg.target_rate_hz) <= cfg.tolerance * cfg.target_rate_hz;
    };
    const auto probe = [&](double gain) {
        net.set_input_gain(gain);
        report.homeostasis_iters++;
        return mean_rate();
    };
    const double start_gain = net.input_gain();
    double rate = mean_rate();
    if (!within(rate)) {
        double lo = start_gain;
        double hi = start_gain;
        if (rate < cfg.target_rate_hz) {
            double r = rate;
            while (r < cfg.target_rate_hz && hi < 16.0 * start_gain &&
                   report.homeostasis_iters < cfg.max_homeostasis_iters)
                r = rate = probe(hi *= 2.0);
        } else {
            double r = rate;
            while (r > cfg.target_rate_hz && lo > start_gain / 16.0 &&
                   report.homeostasis_iters < cfg.max_homeostasis_iters)
                r = rate = probe(lo /= 2.0);
        }
        while (!within(rate) && lo < hi &&
               report.homeostasis_iters < cfg.max_homeostasis_iters) {
            const double mid = std::sqrt(lo * hi);
            rate = probe(mid);
            (rate < cfg.target_rate_hz ? lo : hi) = mid;
        }
    }
    report.mean_rate_hz = rate;
    report.input_gain = net.input_gain();

    std::set<int> snapshot_classes;
    for (const auto& snap : snapshots) snapshot_classes.insert(snap.class_label);

    Eigen::MatrixXd feats(net.hidden_total(), n_replays);
    std::vector<int> labels(static_cast<std::size_t>(n_replays));
    int col = 0;
    for (std::size_t s = 0; s < snapshots.size(); ++s) {
        for (int r = 0; r < cfg.replays_per_class; ++r, ++col) {
            feats.col(col) = net.features(replay_train(s, r), cfg.window_ms);
            labels[static_cast<std::size_t>(col)] = snapshots[s].class_label;
        }
    }

    Eigen::MatrixXd& w = net.readout();
    const Eigen::MatrixXd& imp = net.importance();
    for (int epoch = 0; epoch < epochs; ++epoch) {
        for (int i = 0; i < n_replays; ++i) {
            const double norm = feats.col(i).norm();
            if (norm <= 0.0) continue;
            const Eigen::VectorXd x = feats.col(i) / norm;
            const Eigen::VectorXd scores = w.transpose() * x;
            for (int c : snapshot_classes) {
                const double target = (c == labels[static_cast<std::size_t>(i)]) ? 1.0 : 0.0;
                const double err = target - scores[c];
                if (cfg.importance_scaling) {
                    w.col(c) += cfg.lr * err * (x.array() / (1.0 + imp.col(c).array())).matrix();
                } else {
                    w.col(c) += cfg.lr * err * x;
                }
            }
        }
    }
    return report;
}

}  // namespace cogspike

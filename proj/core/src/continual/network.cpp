#include "cogspike/continual/network.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "cogspike/rng.hpp"
#include "cogspike/snn/simulate.hpp"

namespace cogspike {
namespace {

constexpr double kRateLowHz = 8.0;
constexpr double kRateHighHz = 28.0;
constexpr double kHighChannelProb = 0.35;
constexpr double kRateJitterHz = 4.0;
constexpr double kRateCapHz = 60.0;

void check_class(const TaskSpec& task, int local_class) {
    if (task.n_classes <= 0) throw std::invalid_argument("task: n_classes must be positive");
    if (local_class < 0 || local_class >= task.n_classes)
        throw std::invalid_argument("task: class index out of range");
}

std::vector<int> distinct_picks(Rng& rng, int n, int k) {
    std::set<int> chosen;
    while (static_cast<int>(chosen.size()) < std::min(n, k))
        chosen.insert(static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(n))));
    return {chosen.begin(), chosen.end()};
}

}  // namespace

Eigen::VectorXd class_prototype_rates(const TaskSpec& task, int local_class, int n_inputs) {
    check_class(task, local_class);
    if (n_inputs <= 0) throw std::invalid_argument("task: n_inputs must be positive");
    Rng rng = Rng(task.pattern_seed).substream("proto").substream(
        static_cast<std::uint64_t>(local_class));
    Eigen::VectorXd rates(n_inputs);
    for (int ch = 0; ch < n_inputs; ++ch)
        rates[ch] = rng.bernoulli(kHighChannelProb) ? kRateHighHz : kRateLowHz;
    return rates;
}

SpikeTrain sample_spike_train(const TaskSpec& task, int local_class, int sample_index,
                              int n_inputs, double window_ms) {
    check_class(task, local_class);
    if (sample_index < 0) throw std::invalid_argument("task: sample index must be >= 0");
    if (!(window_ms > 0.0)) throw std::invalid_argument("task: window must be positive");

    const Eigen::VectorXd proto = class_prototype_rates(task, local_class, n_inputs);
    Rng rng = Rng(task.pattern_seed)
                  .substream("sample")
                  .substream(static_cast<std::uint64_t>(local_class))
                  .substream(static_cast<std::uint64_t>(sample_index));

    Eigen::VectorXd rates(n_inputs);
    for (int ch = 0; ch < n_inputs; ++ch)
        rates[ch] = std::clamp(proto[ch] + kRateJitterHz * rng.normal(), 0.0, kRateCapHz);

    const int steps = static_cast<int>(std::llround(window_ms));
    SpikeTrain train(static_cast<std::uint32_t>(n_inputs), window_ms);
    for (int k = 0; k < steps; ++k)
        for (int ch = 0; ch < n_inputs; ++ch)
            if (rng.bernoulli(rates[ch] * 1e-3))
                train.push(static_cast<double>(k), static_cast<std::uint32_t>(ch));
    train.sort();
    return train;
}

struct ContinualNetwork::SimCache {
    Network net;
    std::vector<int> sim_index;  // grown index -> position in the hidden population, -1 if pruned
    int n_active = 0;
};

ContinualNetwork::ContinualNetwork(int n_inputs, int base_neurons, std::uint64_t seed)
    : n_inputs_(n_inputs), readout_(0, 0), importance_(0, 0) {
    if (n_inputs <= 0) throw std::invalid_argument("continual: n_inputs must be positive");
    if (base_neurons < 0) throw std::invalid_argument("continual: base_neurons must be >= 0");
    if (base_neurons > 0) {
        TaskSpec base;
        base.id = -1;
        GrowthConfig cfg;
        cfg.neurons_per_task = base_neurons;
        grow_wave(base.id, cfg, Rng(seed).substream("base"));
    }
}

int ContinualNetwork::hidden_active() const {
    int n = 0;
    for (const auto& h : neurons_) n += h.active ? 1 : 0;
    return n;
}

bool ContinualNetwork::task_grown(int id) const {
    auto it = grown_.find(id);
    return it != grown_.end() && it->second;
}

bool ContinualNetwork::task_trained(int id) const {
    auto it = trained_.find(id);
    return it != trained_.end() && it->second;
}

void ContinualNetwork::mark_trained(int id) {
    if (!task_known(id)) throw std::invalid_argument("continual: unknown task id");
    trained_[id] = true;
}

void ContinualNetwork::ensure_task(const TaskSpec& task) {
    if (task.n_classes <= 0) throw std::invalid_argument("task: n_classes must be positive");
    if (task_known(task.id)) return;
    const int offset = n_classes();
    class_offset_[task.id] = offset;
    readout_.conservativeResize(hidden_total(), offset + task.n_classes);
    readout_.rightCols(task.n_classes).setZero();
    importance_.conservativeResize(hidden_total(), offset + task.n_classes);
    importance_.rightCols(task.n_classes).setZero();
}

int ContinualNetwork::class_offset(int id) const {
    auto it = class_offset_.find(id);
    if (it == class_offset_.end()) throw std::invalid_argument("continual: unknown task id");
    return it->second;
}

std::vector<int> ContinualNetwork::trained_columns() const {
    std::vector<int> cols;
    for (const auto& [id, done] : trained_) {
        if (!done) continue;
        const int offset = class_offset_.at(id);
        // column span length = distance to the next offset or to the end
        int span = n_classes() - offset;
        for (const auto& [other, other_offset] : class_offset_)
            if (other_offset > offset) span = std::min(span, other_offset - offset);
        for (int c = 0; c < span; ++c) cols.push_back(offset + c);
    }
    std::sort(cols.begin(), cols.end());
    return cols;
}

void ContinualNetwork::grow_wave(int task_id, const GrowthConfig& cfg, Rng rng) {
    const int first_new = hidden_total();
    for (int i = 0; i < cfg.neurons_per_task; ++i) {
        HiddenNeuron h;
        h.task = task_id;
        Rng local = rng.substream(static_cast<std::uint64_t>(i));
        // heterogeneous integration: ~30% of a wave comes up weakly driven and
        // near-silent, the redundant tail that pruning later clears
        const bool weak = (i % 10) < 3;
        const double strength = weak ? local.uniform(0.15, 0.4) : local.uniform(0.7, 1.3);
        for (int ch : distinct_picks(local, n_inputs_, cfg.input_fanin))
            h.input_w.emplace_back(ch, strength * local.uniform(3.0, 8.0));
        if (first_new > 0 && cfg.reuse_fanin > 0) {
            for (int src : distinct_picks(local, first_new, cfg.reuse_fanin))
                if (neurons_[static_cast<std::size_t>(src)].active)
                    h.reuse_w.emplace_back(src, local.uniform(0.5, 2.0));
        }
        neurons_.push_back(std::move(h));
    }
    readout_.conservativeResize(hidden_total(), n_classes());
    readout_.bottomRows(cfg.neurons_per_task).setZero();
    importance_.conservativeResize(hidden_total(), n_classes());
    importance_.bottomRows(cfg.neurons_per_task).setZero();
    cache_.reset();
}

int ContinualNetwork::grow(const TaskSpec& task, const GrowthConfig& cfg, std::uint64_t seed) {
    if (cfg.neurons_per_task < 1)
        throw std::invalid_argument("growth: neurons_per_task must be >= 1");
    if (cfg.input_fanin < 1) throw std::invalid_argument("growth: input_fanin must be >= 1");
    if (task_grown(task.id)) throw std::invalid_argument("growth: task already grown");
    ensure_task(task);
    const int first_new = hidden_total();
    grow_wave(task.id, cfg, Rng(seed).substream("grow").substream(
                                 static_cast<std::uint64_t>(static_cast<std::int64_t>(task.id))));
    grown_[task.id] = true;
    int reuse_edges = 0;
    for (int i = first_new; i < hidden_total(); ++i)
        reuse_edges += static_cast<int>(neurons_[static_cast<std::size_t>(i)].reuse_w.size());
    return reuse_edges;
}

PruneStats ContinualNetwork::prune(const std::vector<Eigen::VectorXd>& activity_log,
                                   const GrowthConfig& cfg) {
    if (cfg.prune_inactivity_epochs < 1)
        throw std::invalid_argument("prune: inactivity window must be >= 1 epoch");
    if (static_cast<int>(activity_log.size()) < cfg.prune_inactivity_epochs)
        throw std::invalid_argument("prune: activity log shorter than the inactivity window");
    for (const auto& epoch : activity_log)
        if (epoch.size() != hidden_total())
            throw std::invalid_argument("prune: activity log entries don't match network size");

    PruneStats stats;
    const std::size_t first = activity_log.size() - static_cast<std::size_t>(cfg.prune_inactivity_epochs);
    for (int i = 0; i < hidden_total(); ++i) {
        auto& h = neurons_[static_cast<std::size_t>(i)];
        if (!h.active) continue;
        stats.examined++;
        bool quiet = true;
        for (std::size_t e = first; e < activity_log.size() && quiet; ++e)
            quiet = activity_log[e][i] < cfg.prune_rate_threshold_hz;
        if (!quiet) continue;
        if (importance_.row(i).maxCoeff() >= cfg.importance_guard) {
            stats.kept_important++;
            continue;
        }
        h.active = false;
        stats.pruned++;
    }
    if (stats.pruned > 0) cache_.reset();
    return stats;
}

const ContinualNetwork::SimCache& ContinualNetwork::sim() const {
    if (cache_) return *cache_;
    auto cache = std::make_shared<SimCache>();
    cache->sim_index.assign(static_cast<std::size_t>(hidden_total()), -1);
    for (int i = 0; i < hidden_total(); ++i)
        if (neurons_[static_cast<std::size_t>(i)].active) cache->sim_index[i] = cache->n_active++;

    if (cache->n_active > 0) {
        cache->net.add_population("in", static_cast<std::uint32_t>(n_inputs_));
        cache->net.add_population("hid", static_cast<std::uint32_t>(cache->n_active));
        Eigen::MatrixXd w_in = Eigen::MatrixXd::Zero(n_inputs_, cache->n_active);
        Eigen::MatrixXd w_hh = Eigen::MatrixXd::Zero(cache->n_active, cache->n_active);
        bool any_hh = false;
        for (int i = 0; i < hidden_total(); ++i) {
            const int j = cache->sim_index[i];
            if (j < 0) continue;
            const auto& h = neurons_[static_cast<std::size_t>(i)];
            for (const auto& [ch, w] : h.input_w) w_in(ch, j) = input_gain_ * w;
            for (const auto& [src, w] : h.reuse_w) {
                const int sj = cache->sim_index[static_cast<std::size_t>(src)];
                if (sj < 0) continue;
                w_hh(sj, j) = w;
                any_hh = true;
            }
        }
        cache->net.connect("in", "hid", std::move(w_in), 1.0);
        if (any_hh) cache->net.connect("hid", "hid", std::move(w_hh), 1.0);
    }
    cache_ = std::move(cache);
    return *cache_;
}

Eigen::VectorXd ContinualNetwork::features(const SpikeTrain& input, double window_ms) const {
    if (input.neuron_count != static_cast<std::uint32_t>(n_inputs_))
        throw std::invalid_argument("continual: input train has the wrong channel count");
    if (!(window_ms > 0.0)) throw std::invalid_argument("continual: window must be positive");

    Eigen::VectorXd out = Eigen::VectorXd::Zero(hidden_total());
    const SimCache& cache = sim();
    if (cache.n_active == 0) return out;

    SimOptions opt;
    opt.duration_ms = window_ms;
    SimRecord rec = simulate(cache.net, {{"in", PopulationInput::forced(input)}}, opt);
    const auto counts = rec.spikes[cache.net.index_of("hid")].counts_per_neuron();
    for (int i = 0; i < hidden_total(); ++i)
        if (cache.sim_index[i] >= 0) out[i] = static_cast<double>(counts[static_cast<std::size_t>(cache.sim_index[i])]);
    return out;
}

void ContinualNetwork::raise_importance(const Eigen::MatrixXd& values) {
    if (values.rows() != importance_.rows() || values.cols() != importance_.cols())
        throw std::invalid_argument("continual: importance shape mismatch");
    importance_ = importance_.cwiseMax(values);
}

void ContinualNetwork::set_input_gain(double gain) {
    if (!(gain > 0.0) || !std::isfinite(gain))
        throw std::invalid_argument("continual: input gain must be positive and finite");
    input_gain_ = gain;
    cache_.reset();
}

void ContinualNetwork::log_accuracies(std::vector<double> per_task) {
    accuracy_log_.push_back(std::move(per_task));
}

int grow_for_task(ContinualNetwork& net, const TaskSpec& task, const GrowthConfig& cfg,
                  std::uint64_t seed) {
    return net.grow(task, cfg, seed);
}

TrainResult train_on_task(ContinualNetwork& net, const TaskSpec& task, const TrainConfig& cfg) {
    if (cfg.epochs < 1) throw std::invalid_argument("train: epochs must be >= 1");
    if (task.train_per_class < 1)
        throw std::invalid_argument("train: need at least one sample per class");
    net.ensure_task(task);

    const int n_samples = task.n_classes * task.train_per_class;
    Eigen::MatrixXd feats(net.hidden_total(), n_samples);
    std::vector<int> labels(static_cast<std::size_t>(n_samples));
    Eigen::VectorXd rate_sum = Eigen::VectorXd::Zero(net.hidden_total());
    int s = 0;
    for (int c = 0; c < task.n_classes; ++c) {
        for (int k = 0; k < task.train_per_class; ++k, ++s) {
            const SpikeTrain in = sample_spike_train(task, c, k, net.n_inputs(), cfg.window_ms);
            feats.col(s) = net.features(in, cfg.window_ms);
            labels[static_cast<std::size_t>(s)] = c;
            rate_sum += feats.col(s) * (1000.0 / cfg.window_ms);
        }
    }
    const Eigen::VectorXd epoch_rates = rate_sum / n_samples;

    const int offset = net.class_offset(task.id);
    Eigen::MatrixXd& w = net.readout();
    const Eigen::MatrixXd& imp = net.importance();

    TrainResult result;
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        for (int i = 0; i < n_samples; ++i) {
            const double norm = feats.col(i).norm();
            if (norm <= 0.0) continue;
            const Eigen::VectorXd x = feats.col(i) / norm;
            const Eigen::VectorXd scores = w.transpose() * x;
            const int first = cfg.restrict_to_task_columns ? offset : 0;
            const int last = cfg.restrict_to_task_columns ? offset + task.n_classes
                                                          : static_cast<int>(w.cols());
            for (int c = first; c < last; ++c) {
                const double target = (c == offset + labels[static_cast<std::size_t>(i)]) ? 1.0 : 0.0;
                const double err = target - scores[c];
                if (cfg.importance_scaling) {
                    w.col(c) += cfg.lr * err *
                                (x.array() / (1.0 + imp.col(c).array())).matrix();
                } else {
                    w.col(c) += cfg.lr * err * x;
                }
            }
        }
        result.epoch_rates_hz.push_back(epoch_rates);
    }

    int correct = 0;
    for (int i = 0; i < n_samples; ++i) {
        const double norm = feats.col(i).norm();
        if (norm <= 0.0) continue;
        const Eigen::VectorXd scores = w.transpose() * (feats.col(i) / norm);
        int best = offset;
        for (int c = offset; c < offset + task.n_classes; ++c)
            if (scores[c] > scores[best]) best = c;
        if (best == offset + labels[static_cast<std::size_t>(i)]) correct++;
    }
    result.train_accuracy = 100.0 * correct / n_samples;
    net.mark_trained(task.id);
    return result;
}

PruneStats prune_inactive(ContinualNetwork& net, const std::vector<Eigen::VectorXd>& activity_log,
                          const GrowthConfig& cfg) {
    return net.prune(activity_log, cfg);
}

double task_accuracy(const ContinualNetwork& net, const TaskSpec& task, double window_ms) {
    if (!net.task_trained(task.id)) throw std::invalid_argument("accuracy: task not trained");
    const std::vector<int> cols = net.trained_columns();
    if (cols.empty()) return 0.0;
    const int offset = net.class_offset(task.id);

    int correct = 0;
    int total = 0;
    for (int c = 0; c < task.n_classes; ++c) {
        for (int k = 0; k < task.test_per_class; ++k, ++total) {
            const SpikeTrain in =
                sample_spike_train(task, c, task.train_per_class + k, net.n_inputs(), window_ms);
            const Eigen::VectorXd f = net.features(in, window_ms);
            const double norm = f.norm();
            if (norm <= 0.0) continue;
            const Eigen::VectorXd scores = net.readout().transpose() * (f / norm);
            int best = cols.front();
            for (int col : cols)
                if (scores[col] > scores[best]) best = col;
            if (best == offset + c) correct++;
        }
    }
    return total == 0 ? 0.0 : 100.0 * correct / total;
}

}  // namespace cogspike

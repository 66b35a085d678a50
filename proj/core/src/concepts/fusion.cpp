#include "cogspike/concepts/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <unordered_map>

#include "cogspike/snn/encode.hpp"

namespace cogspike {

void ModalityRepr::validate() const {
    for (double v : features)
        if (!(v >= 0.0 && v <= 1.0))
            throw std::invalid_argument("modality repr: feature outside [0,1]");
}

std::size_t FusedConcept::total_coincidences() const {
    std::size_t total = 0;
    for (std::size_t c : coincidences) total += c;
    return total;
}

SpikeTrain to_spike_train(const ModalityRepr& repr, double duration_ms,
                          double max_rate_per_ms) {
    repr.validate();
    return encode_rate_window(repr.features, duration_ms, max_rate_per_ms);
}

namespace {

using BinCounts = std::vector<std::unordered_map<long, int>>;

BinCounts bin_spikes(const SpikeTrain& train) {
    BinCounts bins(train.neuron_count);
    for (const auto& e : train.events)
        bins[e.neuron][static_cast<long>(std::floor(e.time_ms))]++;
    return bins;
}

// Coincidences between a and b-shifted-by-delta: pairs of spikes landing in
// the same 1 ms bin, each spike pairing at most once.
long long coincidences_at(const BinCounts& a, const BinCounts& b, long delta,
                          std::vector<std::size_t>* per_neuron = nullptr) {
    long long total = 0;
    for (std::size_t n = 0; n < a.size(); ++n) {
        for (const auto& [bin, count] : a[n]) {
            const auto it = b[n].find(bin - delta);
            if (it == b[n].end()) continue;
            const long long paired = std::min(count, it->second);
            total += paired;
            if (per_neuron) (*per_neuron)[n] += static_cast<std::size_t>(paired);
        }
    }
    return total;
}

bool train_less(const SpikeTrain& a, const SpikeTrain& b) {
    return std::lexicographical_compare(a.events.begin(), a.events.end(),
                                        b.events.begin(), b.events.end(),
                                        spike_event_less);
}

}  // namespace

FusedConcept sliding_coordinate(const SpikeTrain& a, const SpikeTrain& b,
                                double window_ms) {
    if (a.neuron_count != b.neuron_count)
        throw std::invalid_argument("sliding_coordinate: neuron counts differ");
    if (window_ms < 0.0)
        throw std::invalid_argument("sliding_coordinate: negative window");

    const BinCounts bins_a = bin_spikes(a);
    const BinCounts bins_b = bin_spikes(b);
    const long window = static_cast<long>(std::floor(window_ms + 1e-9));

    long best_delta = 0;
    long long best = coincidences_at(bins_a, bins_b, 0);
    for (long k = 1; k <= window; ++k) {
        for (const long delta : {-k, k}) {
            const long long c = coincidences_at(bins_a, bins_b, delta);
            if (c > best) {
                best = c;
                best_delta = delta;
            }
        }
    }
    if (best_delta != 0) {
        // exact +/-k tie: pick by train order so (b, a) mirrors the offset
        const long k = std::labs(best_delta);
        if (coincidences_at(bins_a, bins_b, -k) == best &&
            coincidences_at(bins_a, bins_b, k) == best)
            best_delta = train_less(a, b) ? -k : k;
    }

    FusedConcept out;
    out.offset_ms = static_cast<double>(best_delta);
    out.coincidences.assign(a.neuron_count, 0);
    coincidences_at(bins_a, bins_b, best_delta, &out.coincidences);
    out.train = merge(a, b.shifted(out.offset_ms));
    return out;
}

int classify_concept(const FusedConcept& fused,
                     const std::vector<ConceptPrototype>& prototypes) {
    if (prototypes.empty())
        throw std::invalid_argument("classify_concept: empty prototype set");

    const auto counts = fused.train.counts_per_neuron();
    Eigen::VectorXd x(static_cast<Eigen::Index>(counts.size()));
    for (std::size_t i = 0; i < counts.size(); ++i)
        x(static_cast<Eigen::Index>(i)) = static_cast<double>(counts[i]);
    const double x_norm = x.norm();
    if (x_norm == 0.0) return kUnclassifiable;

    int best_label = kUnclassifiable;
    double best_sim = 0.0;
    bool first = true;
    for (const auto& proto : prototypes) {
        if (proto.counts.size() != x.size())
            throw std::invalid_argument("classify_concept: prototype dimension mismatch");
        const double norm = proto.counts.norm();
        const double sim = norm == 0.0 ? -2.0 : x.dot(proto.counts) / (x_norm * norm);
        if (first || sim > best_sim || (sim == best_sim && proto.label < best_label)) {
            best_sim = sim;
            best_label = proto.label;
            first = false;
        }
    }
    return best_label;
}

}  // namespace cogspike

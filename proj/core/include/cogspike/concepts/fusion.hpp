#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <string>
#include <vector>

#include "cogspike/snn/spike_train.hpp"

namespace cogspike {

enum class ModalitySource { sensory, text_derived };

// One modality's view of a concept instance, features normalized to [0,1].
struct ModalityRepr {
    std::string modality;
    std::vector<double> features;
    ModalitySource source = ModalitySource::sensory;

    void validate() const;
};

// Two modality trains aligned at the winning offset: the superposed train,
// per-neuron coincidence counts there, and the offset applied to the second
// train (ms).
struct FusedConcept {
    SpikeTrain train;
    std::vector<std::size_t> coincidences;
    double offset_ms = 0.0;

    std::size_t total_coincidences() const;
};

// Deterministic rate code of the feature vector (see encode_rate_window).
SpikeTrain to_spike_train(const ModalityRepr& repr, double duration_ms,
                          double max_rate_per_ms = 0.1);

// Slides b against a over integer offsets in [-window, +window] and keeps
// the offset with the most spike coincidences in 1 ms bins. Ties go to the
// smallest |offset|; an exact +/-k tie is broken by lexicographic train
// order so that fusing (b, a) yields the mirrored offset.
FusedConcept sliding_coordinate(const SpikeTrain& a, const SpikeTrain& b,
                                double window_ms);

struct ConceptPrototype {
    int label = 0;
    Eigen::VectorXd counts;
};

inline constexpr int kUnclassifiable = -1;

// Nearest prototype by cosine similarity over the fused train's per-neuron
// spike counts. Ties pick the lowest label; an all-zero count vector is
// unclassifiable. Zero-norm prototypes never win.
int classify_concept(const FusedConcept& fused,
                     const std::vector<ConceptPrototype>& prototypes);

}  // namespace cogspike

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cogspike/concepts/fusion.hpp"

namespace cogspike {

struct ConceptFixtureConfig {
    int n_classes = 10;  // even, >= 4
    int samples_per_class = 20;
    int dims = 24;
    double noise_sigma = 0.08;
    double duration_ms = 100.0;
    double align_window_ms = 8.0;

    void validate() const;
};

struct ConceptSample {
    int label = 0;
    ModalityRepr vision;
    ModalityRepr text;
};

// Synthetic bimodal dataset where neither modality separates every class on
// its own: classes 2k and 2k+1 share a vision base, classes c and c+n/2
// share a text base, and only the pair identifies the class.
struct ConceptFixture {
    std::uint64_t seed = 0;
    ConceptFixtureConfig config;
    std::vector<std::vector<double>> vision_base;  // one per class
    std::vector<std::vector<double>> text_base;
    std::vector<ConceptSample> samples;
};

ConceptFixture make_concept_fixture(std::uint64_t seed,
                                    const ConceptFixtureConfig& cfg = {});

// {"seed", "config", "vision_base", "text_base", "samples"}; see
// docs/formats.md.
std::string fixture_to_json(const ConceptFixture& fixture, int indent = -1);

// Per-class prototypes built from the noiseless bases.
std::vector<ConceptPrototype> fused_prototypes(const ConceptFixture& fixture);
std::vector<ConceptPrototype> vision_prototypes(const ConceptFixture& fixture);
std::vector<ConceptPrototype> text_prototypes(const ConceptFixture& fixture);

struct ConceptAccuracy {
    double fused = 0.0;  // percent over all samples
    double vision_only = 0.0;
    double text_only = 0.0;
};

// Classifies every sample three ways: fused via sliding coordination, and
// each modality on its own against its own prototype set.
ConceptAccuracy concept_benchmark(const ConceptFixture& fixture);

}  // namespace cogspike

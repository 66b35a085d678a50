#pragma once

#include <cstdint>
#include <vector>

#include "cogspike/bodily/association.hpp"

namespace cogspike {

struct MirrorTestConfig {
    int n_agents = 3;
    int trials = 100;
    std::uint64_t seed = 0;
    double noise_sigma = 0.0;   // observation noise on mirrored arcs
    double ambiguity_gap = 0.05;
    int training_episodes = 300;
    int gestures_per_trial = 3;  // home-anchored gestures per test movement
    bool force_identical_commands = false;  // agents 0 and 1 share a sequence
    TwoLinkArm arm;
    AssociationConfig coder;
};

struct MirrorTrialRow {
    int trial = 0;
    int agent = 0;
    int claimed = 0;
    int true_index = 0;
    double score = 0.0;
    double gap = 0.0;
    bool correct = false;
    bool ambiguous = false;
};

struct MirrorTestResult {
    double accuracy = 0.0;        // over unambiguous decisions
    double ambiguous_rate = 0.0;
    int decisions = 0;
    int correct = 0;
    int ambiguous = 0;
    std::vector<MirrorTrialRow> rows;
};

// Every agent babbles, learns the shared command-to-arc map, then on each
// trial emits a short gesture sequence, sees all mirrored movements unlabeled,
// and claims the one matching its own prediction best. Decisions with a score
// gap below ambiguity_gap are reported separately instead of being scored.
MirrorTestResult run_mirror_test(const MirrorTestConfig& cfg);

}  // namespace cogspike

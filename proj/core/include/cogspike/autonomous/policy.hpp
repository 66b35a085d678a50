#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "cogspike/autonomous/experience.hpp"
#include "cogspike/autonomous/gridworld.hpp"
#include "cogspike/plasticity/eligibility.hpp"
#include "cogspike/snn/network.hpp"

namespace cogspike {

struct PolicyConfig {
    int n_states = 25;
    int n_actions = 4;
    int striatum_per_action = 10;
    double window_ms = 100.0;  // decision window per environment step

    // Place-cell drive arrives every millisecond, so a striatal neuron sees
    // roughly bias + weight as its input current.
    double striatum_bias = 0.95;
    double premotor_bias = 0.5;
    double striatum_premotor_weight = 0.8;

    double w_init_lo = 0.15;
    double w_init_hi = 0.25;
    double w_max = 1.0;

    double tau_e_ms = 400.0;     // eligibility persistence across environment steps
    double baseline_rate = 0.01; // running-average reward update rate
    StdpParams stdp{0.05, 0.0, 20.0, 20.0};
};

// Place cells ("prefrontal") feed a striatal layer whose per-action groups
// drive one premotor neuron each; the premotor spike counts are the WTA
// scores. Only the prefrontal->striatum projection learns, gated by the
// reward prediction error against the running baseline.
class PolicyNetwork {
public:
    PolicyNetwork(PolicyConfig cfg, std::uint64_t seed);

    const PolicyConfig& config() const { return cfg_; }
    const Eigen::MatrixXd& weights() const;
    double baseline() const { return baseline_; }
    std::uint64_t steps_trained() const { return steps_; }

    // Premotor spike counts from one simulated decision window.
    std::vector<double> action_scores(int state) const;

    // Credits the (state, action) pair: the active place cell fires through
    // the window while the chosen action's striatal group replays an
    // efference copy, so the pair's synapses gain eligibility.
    void stamp_eligibility(EligibilityTrace& trace, int state, int action) const;

    // Converts eligibility into weight change gated by reward minus the
    // running baseline; returns the reward prediction error used.
    double apply_reward(const EligibilityTrace& trace, double reward, double lr);

    std::uint64_t bump_step() { return steps_++; }

private:
    PolicyConfig cfg_;
    Network net_;
    std::uint32_t pfc_striatum_ = 0;
    double baseline_ = 0.0;
    std::uint64_t steps_ = 0;
};

int dm_select_action(const PolicyNetwork& policy, int state, double explore_eps,
                     std::uint64_t seed);

struct EpisodeConfig {
    double explore_eps = 0.1;
    double lr = 0.05;
    int max_steps = 60;
    std::uint64_t seed = 0;
    bool learn = true;
};

struct EpisodeResult {
    double episode_return = 0.0;
    int steps = 0;
    bool reached_goal = false;
    bool truncated = false;
    std::vector<ExperienceRecord> experience;
};

// Resets the environment and runs one episode: select, act, credit, gate by
// dopamine. Episodes that hit max_steps without terminating are truncated.
EpisodeResult dm_train_episode(PolicyNetwork& policy, GridWorld& env, const EpisodeConfig& cfg);

}  // namespace cogspike

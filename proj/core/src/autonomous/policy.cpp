#include "cogspike/autonomous/policy.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <utility>

#include "cogspike/rng.hpp"
#include "cogspike/snn/simulate.hpp"
#include "cogspike/snn/spike_train.hpp"
#include "cogspike/snn/wta.hpp"

namespace cogspike {

PolicyNetwork::PolicyNetwork(PolicyConfig cfg, std::uint64_t seed) : cfg_(std::move(cfg)) {
    if (cfg_.n_states < 1 || cfg_.n_actions < 1 || cfg_.striatum_per_action < 1)
        throw std::invalid_argument("PolicyNetwork: populations must be non-empty");
    if (!(cfg_.window_ms >= 1.0))
        throw std::invalid_argument("PolicyNetwork: decision window too short");
    const int n_str = cfg_.n_actions * cfg_.striatum_per_action;

    net_.add_population("prefrontal", static_cast<std::uint32_t>(cfg_.n_states));
    net_.add_population("striatum", static_cast<std::uint32_t>(n_str));
    net_.add_population("premotor", static_cast<std::uint32_t>(cfg_.n_actions));

    Rng rng = Rng(seed).substream("policy-init");
    Eigen::MatrixXd w(cfg_.n_states, n_str);
    for (Eigen::Index i = 0; i < w.rows(); ++i)
        for (Eigen::Index j = 0; j < w.cols(); ++j)
            w(i, j) = rng.uniform(cfg_.w_init_lo, cfg_.w_init_hi);
    pfc_striatum_ = net_.connect("prefrontal", "striatum", std::move(w), 1.0, "rstdp");

    Eigen::MatrixXd sp = Eigen::MatrixXd::Zero(n_str, cfg_.n_actions);
    for (int a = 0; a < cfg_.n_actions; ++a)
        for (int k = 0; k < cfg_.striatum_per_action; ++k)
            sp(a * cfg_.striatum_per_action + k, a) = cfg_.striatum_premotor_weight;
    net_.connect("striatum", "premotor", std::move(sp), 1.0);
}

const Eigen::MatrixXd& PolicyNetwork::weights() const {
    return net_.projection(pfc_striatum_).weights;
}

std::vector<double> PolicyNetwork::action_scores(int state) const {
    if (state < 0 || state >= cfg_.n_states)
        throw std::invalid_argument("PolicyNetwork: state outside the grid");
    const int steps = static_cast<int>(cfg_.window_ms);
    const int n_str = cfg_.n_actions * cfg_.striatum_per_action;

    SpikeTrain drive(static_cast<std::uint32_t>(cfg_.n_states), cfg_.window_ms);
    for (int t = 0; t < steps; ++t) drive.push(static_cast<double>(t), static_cast<std::uint32_t>(state));

    std::map<std::string, PopulationInput> inputs;
    inputs["prefrontal"] = PopulationInput::forced(std::move(drive));
    inputs["striatum"] = PopulationInput::constant(cfg_.striatum_bias, static_cast<std::uint32_t>(n_str));
    inputs["premotor"] = PopulationInput::constant(cfg_.premotor_bias, static_cast<std::uint32_t>(cfg_.n_actions));

    SimOptions opt;
    opt.duration_ms = cfg_.window_ms;
    const SimRecord rec = simulate(net_, inputs, opt);

    std::vector<double> counts(static_cast<std::size_t>(cfg_.n_actions), 0.0);
    for (const auto& e : rec.spikes[net_.index_of("premotor")].events) counts[e.neuron] += 1.0;
    return counts;
}

void PolicyNetwork::stamp_eligibility(EligibilityTrace& trace, int state, int action) const {
    if (state < 0 || state >= cfg_.n_states)
        throw std::invalid_argument("PolicyNetwork: state outside the grid");
    if (action < 0 || action >= cfg_.n_actions)
        throw std::invalid_argument("PolicyNetwork: action out of range");
    const int steps = static_cast<int>(cfg_.window_ms);
    std::vector<std::uint32_t> group(static_cast<std::size_t>(cfg_.striatum_per_action));
    for (int k = 0; k < cfg_.striatum_per_action; ++k)
        group[static_cast<std::size_t>(k)] =
            static_cast<std::uint32_t>(action * cfg_.striatum_per_action + k);
    const std::vector<std::uint32_t> pre{static_cast<std::uint32_t>(state)};
    const std::vector<std::uint32_t> none;
    for (int t = 0; t < steps; ++t) {
        const bool efference = (t % 10) == 5;
        update_eligibility(trace, pre, efference ? group : none, cfg_.stdp, 1.0);
    }
}

double PolicyNetwork::apply_reward(const EligibilityTrace& trace, double reward, double lr) {
    const double rpe = reward - baseline_;
    auto& w = net_.projection(pfc_striatum_).weights;
    if (rpe != 0.0) {
        // Soft bounds: potentiation slows near w_max and depression near
        // w_min, so repeated credit ranks synapses instead of pinning them
        // all at the rail.
        EligibilityTrace gated = trace;
        if (rpe > 0.0)
            gated.values = trace.values.cwiseProduct(
                (Eigen::MatrixXd::Constant(w.rows(), w.cols(), cfg_.w_max) - w));
        else
            gated.values = trace.values.cwiseProduct(w);
        w = rstdp_apply(w, gated, rpe, lr, 0.0, cfg_.w_max);
    }
    baseline_ += cfg_.baseline_rate * (reward - baseline_);
    return rpe;
}

int dm_select_action(const PolicyNetwork& policy, int state, double explore_eps,
                     std::uint64_t seed) {
    if (state < 0 || state >= policy.config().n_states)
        throw std::invalid_argument("dm_select_action: state outside the grid");
    Rng rng = Rng(seed).substream("select");
    if (rng.bernoulli(explore_eps))
        return static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(policy.config().n_actions)));
    const auto scores = policy.action_scores(state);
    Rng tie = rng.substream("tie");
    return static_cast<int>(wta_select(scores, TieRule::random, &tie));
}

EpisodeResult dm_train_episode(PolicyNetwork& policy, GridWorld& env, const EpisodeConfig& cfg) {
    if (env.n_states() != policy.config().n_states)
        throw std::invalid_argument("dm_train_episode: environment/policy state size mismatch");
    if (GridWorld::n_actions != policy.config().n_actions)
        throw std::invalid_argument("dm_train_episode: environment/policy action set mismatch");
    if (cfg.max_steps < 1) throw std::invalid_argument("dm_train_episode: max_steps must be >= 1");

    env.reset();
    EligibilityTrace trace =
        EligibilityTrace::zeros(policy.config().n_states,
                                policy.config().n_actions * policy.config().striatum_per_action,
                                policy.config().tau_e_ms);
    const Rng root(cfg.seed);
    EpisodeResult res;
    bool done = false;
    for (int step = 0; step < cfg.max_steps && !done; ++step) {
        const int s = env.state();
        const std::uint64_t pick = root.substream("action").substream(static_cast<std::uint64_t>(step)).next_u64();
        const int a = dm_select_action(policy, s, cfg.explore_eps, pick);
        const StepOutcome out = env.step(a);
        policy.stamp_eligibility(trace, s, a);
        if (cfg.learn) policy.apply_reward(trace, out.reward, cfg.lr);

        ExperienceRecord rec;
        rec.state = s;
        rec.action = a;
        rec.reward = out.reward;
        rec.next_state = env.state();
        rec.timestamp = policy.bump_step();
        if (out.reached_goal) rec.emotion = "reward";
        else if (out.hit_hazard) rec.emotion = "harm";
        else if (out.collided) rec.emotion = "bump";
        res.experience.push_back(std::move(rec));

        res.episode_return += out.reward;
        res.steps = step + 1;
        done = out.done;
        res.reached_goal = out.reached_goal;
    }
    res.truncated = !done;
    return res;
}

}  // namespace cogspike

#include "cogspike/social/mirror.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "cogspike/snn/simulate.hpp"

namespace cogspike {

namespace {

SpikeTrain group_burst(std::uint32_t population_size, double window_ms, double period_ms,
                       int group, int group_size) {
    SpikeTrain train(population_size, window_ms);
    if (group < 0) return train;
    for (double t = 1.0; t < window_ms; t += period_ms)
        for (int n = 0; n < group_size; ++n)
            train.push(t, static_cast<std::uint32_t>(group * group_size + n));
    train.sort();
    return train;
}

}  // namespace

struct MirrorSystem::Counts {
    std::vector<std::size_t> perception;
    std::vector<std::size_t> motor;
    std::vector<std::size_t> emotion;
};

MirrorSystem::MirrorSystem(const MirrorConfig& cfg) : cfg_(cfg) {
    if (cfg_.n_actions < 1) throw std::invalid_argument("MirrorSystem: need at least one action");
    if (cfg_.neurons_per_group < 1 || cfg_.anti_mirror_neurons < 1)
        throw std::invalid_argument("MirrorSystem: population groups must be non-empty");
    if (!(cfg_.window_ms > 0.0) || !(cfg_.input_period_ms > 0.0))
        throw std::invalid_argument("MirrorSystem: window and input period must be positive");
    if (!(cfg_.hebbian_rate > 0.0) || !(cfg_.w_max > 0.0))
        throw std::invalid_argument("MirrorSystem: learning rate and weight cap must be positive");

    const int k = cfg_.neurons_per_group;
    const auto n_percept = static_cast<std::uint32_t>(cfg_.n_actions * k);
    const auto n_motor = static_cast<std::uint32_t>(cfg_.n_actions * k + cfg_.anti_mirror_neurons);
    const auto n_emotion = static_cast<std::uint32_t>(n_emotions * k);
    const auto n_anti = static_cast<std::uint32_t>(cfg_.anti_mirror_neurons);

    NeuronParams fast;
    fast.t_refractory_ms = 0.0;

    perception_ = net_.add_population("perception", n_percept, fast);
    command_ = net_.add_population("command", n_percept, fast);
    proprio_ = net_.add_population("proprio", n_anti, fast);
    feel_ = net_.add_population("feel", n_emotion, fast);
    motor_ = net_.add_population("motor", n_motor, fast);
    emotion_ = net_.add_population("emotion", n_emotion, fast);

    p2m_ = net_.connect("perception", "motor", Eigen::MatrixXd::Zero(n_percept, n_motor), 1.0,
                        "hebb");
    m2e_ = net_.connect("motor", "emotion", Eigen::MatrixXd::Zero(n_motor, n_emotion), 1.0,
                        "hebb");

    Eigen::MatrixXd cmd = Eigen::MatrixXd::Zero(n_percept, n_motor);
    cmd.leftCols(n_percept) = Eigen::MatrixXd::Identity(n_percept, n_percept) * cfg_.drive_weight;
    net_.connect("command", "motor", cmd, 1.0);

    Eigen::MatrixXd pro = Eigen::MatrixXd::Zero(n_anti, n_motor);
    pro.rightCols(n_anti) = Eigen::MatrixXd::Identity(n_anti, n_anti) * cfg_.drive_weight;
    net_.connect("proprio", "motor", pro, 1.0);

    net_.connect("feel", "emotion",
                 Eigen::MatrixXd::Identity(n_emotion, n_emotion) * cfg_.drive_weight, 1.0);
}

MirrorSystem::Counts MirrorSystem::run(int perception_action, int command_action, bool proprio,
                                       int felt) const {
    const int k = cfg_.neurons_per_group;
    std::map<std::string, PopulationInput> inputs;
    inputs.emplace("perception",
                   PopulationInput::forced(group_burst(net_.population(perception_).size,
                                                       cfg_.window_ms, cfg_.input_period_ms,
                                                       perception_action, k)));
    inputs.emplace("command",
                   PopulationInput::forced(group_burst(net_.population(command_).size,
                                                       cfg_.window_ms, cfg_.input_period_ms,
                                                       command_action, k)));
    inputs.emplace("proprio",
                   PopulationInput::forced(group_burst(net_.population(proprio_).size,
                                                       cfg_.window_ms, cfg_.input_period_ms,
                                                       proprio ? 0 : -1, cfg_.anti_mirror_neurons)));
    inputs.emplace("feel",
                   PopulationInput::forced(group_burst(net_.population(feel_).size, cfg_.window_ms,
                                                       cfg_.input_period_ms, felt, k)));

    SimOptions opt;
    opt.duration_ms = cfg_.window_ms;
    opt.dt_ms = 1.0;
    const SimRecord rec = simulate(net_, inputs, opt);

    Counts c;
    c.perception = rec.spikes[perception_].counts_per_neuron();
    c.motor = rec.spikes[motor_].counts_per_neuron();
    c.emotion = rec.spikes[emotion_].counts_per_neuron();
    return c;
}

void MirrorSystem::train_self_experience(int action, Emotion felt) {
    if (action < 0 || action >= cfg_.n_actions)
        throw std::invalid_argument("train_self_experience: action outside the action set");

    const Counts c = run(action, action, true, static_cast<int>(felt));

    const auto [mirror_lo, mirror_hi] = mirror_range();
    auto& wpm = net_.projection(p2m_).weights;
    for (int i = 0; i < wpm.rows(); ++i) {
        if (c.perception[static_cast<std::size_t>(i)] == 0) continue;
        for (int j = mirror_lo; j < mirror_hi; ++j)
            wpm(i, j) = std::min(cfg_.w_max,
                                 wpm(i, j) + cfg_.hebbian_rate *
                                                 static_cast<double>(c.perception[
                                                     static_cast<std::size_t>(i)]) *
                                                 static_cast<double>(c.motor[
                                                     static_cast<std::size_t>(j)]));
    }
    // only the mirror rows learn; the anti-mirror pathway carries attribution,
    // not affect
    auto& wme = net_.projection(m2e_).weights;
    for (int i = mirror_lo; i < mirror_hi; ++i) {
        if (c.motor[static_cast<std::size_t>(i)] == 0) continue;
        for (int j = 0; j < wme.cols(); ++j)
            wme(i, j) = std::min(cfg_.w_max,
                                 wme(i, j) + cfg_.hebbian_rate *
                                                 static_cast<double>(c.motor[
                                                     static_cast<std::size_t>(i)]) *
                                                 static_cast<double>(c.emotion[
                                                     static_cast<std::size_t>(j)]));
    }
    ++episodes_;
}

std::pair<EmotionState, Attribution> MirrorSystem::observe(int action,
                                                           bool proprioceptive_copy) const {
    if (episodes_ == 0)
        throw std::invalid_argument("observe: mirror system has had no self experience");
    if (action < 0 || action >= cfg_.n_actions)
        throw std::invalid_argument("observe: action outside the action set");

    const Counts c = run(action, -1, proprioceptive_copy, -1);

    const int k = cfg_.neurons_per_group;
    int winner = 0;
    std::size_t winner_count = 0;
    for (int g = 0; g < n_emotions; ++g) {
        std::size_t count = 0;
        for (int n = 0; n < k; ++n) count += c.emotion[static_cast<std::size_t>(g * k + n)];
        if (count > winner_count) {
            winner = g;
            winner_count = count;
        }
    }

    EmotionState state;
    if (winner_count >= static_cast<std::size_t>(cfg_.silence_floor)) {
        state.label = static_cast<Emotion>(winner);
        const double per_neuron = cfg_.window_ms / cfg_.input_period_ms;
        state.intensity = std::min(1.0, static_cast<double>(winner_count) / (k * per_neuron));
    }

    const auto [anti_lo, anti_hi] = anti_mirror_range();
    std::size_t anti_count = 0;
    for (int i = anti_lo; i < anti_hi; ++i) anti_count += c.motor[static_cast<std::size_t>(i)];
    const Attribution who = anti_count >= static_cast<std::size_t>(cfg_.anti_mirror_neurons)
                                ? Attribution::self
                                : Attribution::other;
    return {state, who};
}

const Eigen::MatrixXd& MirrorSystem::perception_to_motor() const {
    return net_.projection(p2m_).weights;
}

const Eigen::MatrixXd& MirrorSystem::motor_to_emotion() const {
    return net_.projection(m2e_).weights;
}

std::pair<EmotionState, Attribution> observe_action_empathy(const MirrorSystem& mirror,
                                                            int observed_action,
                                                            bool proprioceptive_copy) {
    return mirror.observe(observed_action, proprioceptive_copy);
}

AltruisticChoice decide_altruistic(double own_task_value, const EmotionState& other_emotion,
                                   double empathy_gain) {
    if (!(empathy_gain >= 0.0))
        throw std::invalid_argument("decide_altruistic: empathy gain must be >= 0");
    if (!std::isfinite(own_task_value))
        throw std::invalid_argument("decide_altruistic: task value must be finite");
    const double negative_valence =
        other_emotion.label == Emotion::distress ? std::max(0.0, other_emotion.intensity) : 0.0;
    return empathy_gain * negative_valence > own_task_value ? AltruisticChoice::rescue
                                                            : AltruisticChoice::continue_task;
}

}  // namespace cogspike

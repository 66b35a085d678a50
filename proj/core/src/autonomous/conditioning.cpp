#include "cogspike/autonomous/conditioning.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cogspike/rng.hpp"
#include "cogspike/snn/encode.hpp"
#include "cogspike/snn/simulate.hpp"

namespace cogspike {

namespace {

std::string chan_name(const char* base, int c) { return std::string(base) + std::to_string(c); }

}  // namespace

ConditioningCircuit::ConditioningCircuit(const ConditioningConfig& cfg, std::uint64_t seed)
    : cfg_(cfg), seed_(seed) {
    if (cfg_.channels < 1)
        throw std::invalid_argument("conditioning: need at least one stimulus channel");

    acq_.assign(static_cast<std::size_t>(cfg_.channels), 0.0);
    ext_.assign(static_cast<std::size_t>(cfg_.channels), 0.0);

    Rng bias_rng = Rng(seed_).substream("bias");
    for (int i = 0; i < cfg_.pu_size; ++i)
        pu_bias_.push_back(cfg_.pu_bias * (1.0 + 0.06 * bias_rng.uniform(-1.0, 1.0)));
    for (int i = 0; i < cfg_.ipn_size; ++i)
        ipn_bias_.push_back(cfg_.ipn_bias * (1.0 + 0.06 * bias_rng.uniform(-1.0, 1.0)));

    for (int c = 0; c < cfg_.channels; ++c) {
        net_.add_population(chan_name("pn", c), static_cast<std::uint32_t>(cfg_.pn_per_channel));
        net_.add_population(chan_name("gc", c), static_cast<std::uint32_t>(cfg_.gc_per_channel));
    }
    net_.add_population("pu", static_cast<std::uint32_t>(cfg_.pu_size));
    net_.add_population("ipn", static_cast<std::uint32_t>(cfg_.ipn_size));
    net_.add_population("io", static_cast<std::uint32_t>(cfg_.io_size));

    for (int c = 0; c < cfg_.channels; ++c) {
        pn_ipn_proj_.push_back(net_.connect(
            chan_name("pn", c), "ipn",
            Eigen::MatrixXd::Zero(cfg_.pn_per_channel, cfg_.ipn_size), 1.0, "acquisition"));
        gc_pu_proj_.push_back(net_.connect(
            chan_name("gc", c), "pu",
            Eigen::MatrixXd::Zero(cfg_.gc_per_channel, cfg_.pu_size), 1.0, "granule"));
    }
    net_.connect("pu", "ipn",
                 Eigen::MatrixXd::Constant(cfg_.pu_size, cfg_.ipn_size, cfg_.pu_ipn_weight));
    net_.connect("io", "ipn",
                 Eigen::MatrixXd::Constant(cfg_.io_size, cfg_.ipn_size, cfg_.io_ipn_weight));
    // climbing fiber: teaching signal only, carries no current
    net_.connect("io", "pu", Eigen::MatrixXd::Zero(cfg_.io_size, cfg_.pu_size), 1.0, "teaching");
    refresh_weights();

    // calibrate the response scale once at full strength, then restore
    acq_[0] = 1.0;
    refresh_weights();
    const double calib_window = 150.0;
    const TrialTrace probe = simulate_trial({0}, false, calib_window);
    cr_per_ms_full_ = std::max(probe.ipn_pre_spikes / calib_window, 1e-9);
    acq_[0] = 0.0;
    refresh_weights();
    trial_counter_ = 0;
}

void ConditioningCircuit::refresh_weights() {
    for (int c = 0; c < cfg_.channels; ++c) {
        const auto i = static_cast<std::size_t>(c);
        net_.projection(pn_ipn_proj_[i]).weights.setConstant(cfg_.pn_ipn_full * acq_[i]);
        // acquisition depresses the granule drive; extinction restores it past
        // baseline so the Purkinje layer re-engages during the stimulus
        const double granule = std::max(0.0, 1.0 - acq_[i] + ext_[i]);
        net_.projection(gc_pu_proj_[i])
            .weights.setConstant(cfg_.gc_pu_base * granule - cfg_.gc_pu_interneuron);
    }
}

double ConditioningCircuit::interval_eligibility(double interval_ms) const {
    if (interval_ms <= cfg_.window_min_ms || interval_ms >= cfg_.window_max_ms) return 0.0;
    if (interval_ms < cfg_.window_plateau_lo_ms)
        return (interval_ms - cfg_.window_min_ms) /
               (cfg_.window_plateau_lo_ms - cfg_.window_min_ms);
    if (interval_ms > cfg_.window_plateau_hi_ms)
        return (cfg_.window_max_ms - interval_ms) /
               (cfg_.window_max_ms - cfg_.window_plateau_hi_ms);
    return 1.0;
}

TrialTrace ConditioningCircuit::simulate_trial(const std::vector<int>& stimulus_channels,
                                               bool reinforcer, double interval_ms) {
    const double stim_on = cfg_.lead_ms;
    const double reinforcer_on = stim_on + interval_ms;
    const double stim_off = reinforcer_on + cfg_.reinforcer_ms;
    const double duration = stim_off + cfg_.tail_ms;

    Rng trial_rng = Rng(seed_).substream("trial").substream(trial_counter_++);

    std::map<std::string, PopulationInput> inputs;
    for (int c = 0; c < cfg_.channels; ++c) {
        const bool active = std::find(stimulus_channels.begin(), stimulus_channels.end(), c) !=
                            stimulus_channels.end();
        SpikeTrain pn_train(static_cast<std::uint32_t>(cfg_.pn_per_channel), duration);
        SpikeTrain gc_train(static_cast<std::uint32_t>(cfg_.gc_per_channel), duration);
        if (active) {
            const auto window = stim_off - stim_on;
            auto pn_burst = encode_poisson(
                std::vector<double>(static_cast<std::size_t>(cfg_.pn_per_channel),
                                    cfg_.stimulus_rate_hz),
                window, trial_rng.substream(chan_name("pn", c)).next_u64());
            for (const auto& ev : pn_burst.events)
                pn_train.push(ev.time_ms + stim_on, ev.neuron);
            auto gc_burst = encode_poisson(
                std::vector<double>(static_cast<std::size_t>(cfg_.gc_per_channel),
                                    cfg_.stimulus_rate_hz),
                window, trial_rng.substream(chan_name("gc", c)).next_u64());
            for (const auto& ev : gc_burst.events)
                gc_train.push(ev.time_ms + stim_on, ev.neuron);
        }
        inputs[chan_name("pn", c)] = PopulationInput::forced(std::move(pn_train));
        inputs[chan_name("gc", c)] = PopulationInput::forced(std::move(gc_train));
    }

    SpikeTrain io_train(static_cast<std::uint32_t>(cfg_.io_size), duration);
    if (reinforcer) {
        for (int n = 0; n < cfg_.io_size; ++n)
            for (double t = reinforcer_on; t < reinforcer_on + cfg_.reinforcer_ms; t += 4.0)
                io_train.push(t, static_cast<std::uint32_t>(n));
        io_train.sort();
    }
    inputs["io"] = PopulationInput::forced(std::move(io_train));
    inputs["pu"] = PopulationInput::constant(pu_bias_);
    inputs["ipn"] = PopulationInput::constant(ipn_bias_);

    SimOptions opt;
    opt.duration_ms = duration;
    opt.dt_ms = 1.0;
    opt.seed = trial_rng.next_u64();

    const SimRecord rec = simulate(net_, inputs, opt);

    const auto& ipn_spikes = rec.spikes[net_.index_of("ipn")];
    const auto& pu_spikes = rec.spikes[net_.index_of("pu")];

    TrialTrace trace;
    for (const auto& ev : ipn_spikes.events) {
        if (ev.time_ms >= stim_on && ev.time_ms < reinforcer_on) trace.ipn_pre_spikes += 1.0;
        if (ev.time_ms >= reinforcer_on && ev.time_ms < stim_off + 30.0) trace.ur_spikes += 1.0;
    }
    double pu_in_window = 0.0;
    for (const auto& ev : pu_spikes.events)
        if (ev.time_ms >= stim_on && ev.time_ms < reinforcer_on) pu_in_window += 1.0;
    trace.pu_rate_hz =
        interval_ms > 0.0 ? pu_in_window / cfg_.pu_size / interval_ms * 1000.0 : 0.0;
    trace.cr = std::clamp(
        trace.ipn_pre_spikes / std::max(interval_ms, 1.0) / cr_per_ms_full_, 0.0, 1.0);
    return trace;
}

double ConditioningCircuit::trial(const std::vector<int>& stimulus_channels, bool reinforcer,
                                  double interval_ms, bool learn) {
    if (interval_ms < 0.0)
        throw std::invalid_argument("conditioning: interval must be non-negative");
    for (int c : stimulus_channels)
        if (c < 0 || c >= cfg_.channels)
            throw std::invalid_argument("conditioning: unknown stimulus channel");

    last_ = simulate_trial(stimulus_channels, reinforcer, interval_ms);

    if (learn && !stimulus_channels.empty()) {
        const double target = reinforcer ? 1.0 : 0.0;
        const double err = target - last_.cr;
        const double gate = reinforcer ? interval_eligibility(interval_ms) : 1.0;
        for (int c : stimulus_channels) {
            const auto i = static_cast<std::size_t>(c);
            if (err > 0.0) {
                acq_[i] = std::min(1.1, acq_[i] + cfg_.lr_acquire * err * gate);
                ext_[i] = std::max(0.0, ext_[i] - cfg_.lr_unextinguish * err * gate);
            } else if (err < 0.0) {
                ext_[i] = std::min(1.2, ext_[i] + cfg_.lr_extinguish * (-err));
            }
        }
        refresh_weights();
    }
    return last_.cr;
}

void ConditioningCircuit::rest(double hours) {
    if (hours < 0.0) throw std::invalid_argument("conditioning: rest must be non-negative");
    const double keep = std::exp(-hours / cfg_.extinction_recovery_tau_h);
    for (auto& e : ext_) e *= keep;
    refresh_weights();
}

double ConditioningCircuit::acquisition(int channel) const {
    return acq_.at(static_cast<std::size_t>(channel));
}

double ConditioningCircuit::extinction(int channel) const {
    return ext_.at(static_cast<std::size_t>(channel));
}

double conditioning_trial(ConditioningCircuit& circuit, bool cs, bool us, double interval_ms) {
    std::vector<int> channels;
    if (cs) channels.push_back(0);
    return circuit.trial(channels, us, interval_ms);
}

}  // namespace cogspike

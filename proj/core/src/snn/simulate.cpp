#include "cogspike/snn/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cogspike/rng.hpp"

namespace cogspike {

namespace {

std::size_t delay_steps(double delay_ms, double dt_ms) {
    const auto steps = static_cast<std::size_t>(std::ceil(delay_ms / dt_ms - 1e-9));
    return std::max<std::size_t>(1, steps);
}

}  // namespace

SimRecord simulate(const Network& net, const std::map<std::string, PopulationInput>& inputs,
                   const SimOptions& opt) {
    if (!(opt.duration_ms > 0.0)) throw std::invalid_argument("simulate: duration must be > 0");
    if (!(opt.dt_ms > 0.0)) throw std::invalid_argument("simulate: dt must be > 0");

    const auto& pops = net.populations();
    const std::size_t n_pops = pops.size();
    const auto n_steps =
        static_cast<std::size_t>(std::ceil(opt.duration_ms / opt.dt_ms - 1e-9));

    // flat neuron indexing across populations
    std::vector<std::size_t> offset(n_pops + 1, 0);
    for (std::size_t p = 0; p < n_pops; ++p) offset[p + 1] = offset[p] + pops[p].size;
    const std::size_t n_total = offset[n_pops];

    // resolve inputs, validating references and shapes up front
    std::vector<const SpikeTrain*> forced(n_pops, nullptr);
    std::vector<const std::vector<double>*> drive(n_pops, nullptr);
    for (const auto& [name, in] : inputs) {
        const std::uint32_t p = net.index_of(name);
        if (in.spikes) {
            if (in.spikes->neuron_count != pops[p].size)
                throw std::invalid_argument("simulate: forced train size mismatch for '" + name +
                                            "'");
            in.spikes->validate();
            forced[p] = &*in.spikes;
        }
        if (!in.current.empty()) {
            if (in.current.size() != pops[p].size)
                throw std::invalid_argument("simulate: current vector size mismatch for '" + name +
                                            "'");
            drive[p] = &in.current;
        }
    }

    std::size_t max_delay = 1;
    for (const auto& proj : net.projections())
        max_delay = std::max(max_delay, delay_steps(proj.delay_ms, opt.dt_ms));
    const std::size_t ring_size = max_delay + 1;
    std::vector<std::vector<double>> ring(ring_size, std::vector<double>(n_total, 0.0));

    SimRecord rec;
    rec.duration_ms = opt.duration_ms;
    rec.dt_ms = opt.dt_ms;
    rec.spikes.reserve(n_pops);
    for (const auto& p : pops) rec.spikes.emplace_back(p.size, opt.duration_ms);

    std::vector<NeuronState> state(n_total);
    std::vector<std::size_t> forced_cursor(n_pops, 0);

    std::vector<std::vector<std::vector<double>>*> memb(n_pops, nullptr);
    for (const auto& name : opt.record_membrane) {
        const std::uint32_t p = net.index_of(name);
        auto& slot = rec.membrane[pops[p].name];
        slot.assign(pops[p].size, std::vector<double>(n_steps, 0.0));
        memb[p] = &slot;
    }

    std::vector<Rng> noise;
    if (opt.noise_sigma > 0.0) {
        noise.reserve(n_pops);
        Rng root(opt.seed);
        for (std::size_t p = 0; p < n_pops; ++p) noise.push_back(root.substream(p));
    }

    // spikes emitted this step, as flat neuron indices
    std::vector<std::size_t> fired;

    for (std::size_t k = 0; k < n_steps; ++k) {
        const std::size_t slot = k % ring_size;
        fired.clear();

        for (std::size_t p = 0; p < n_pops; ++p) {
            if (forced[p]) {
                const auto& events = forced[p]->events;
                auto& cur = forced_cursor[p];
                const double t_hi = static_cast<double>(k + 1) * opt.dt_ms;
                while (cur < events.size() && events[cur].time_ms < t_hi) {
                    if (events[cur].time_ms >= opt.duration_ms) break;
                    rec.spikes[p].push(events[cur].time_ms, events[cur].neuron);
                    fired.push_back(offset[p] + events[cur].neuron);
                    ++cur;
                }
                continue;
            }
            const auto& params = pops[p].params;
            for (std::uint32_t j = 0; j < pops[p].size; ++j) {
                const std::size_t idx = offset[p] + j;
                double current = ring[slot][idx];
                if (drive[p]) current += (*drive[p])[j];
                if (!noise.empty()) current += noise[p].normal() * opt.noise_sigma;
                const bool spiked = lif_step(state[idx], params, current, opt.dt_ms);
                if (memb[p]) (*memb[p])[j][k] = state[idx].v;
                if (spiked) {
                    rec.spikes[p].push(static_cast<double>(k) * opt.dt_ms, j);
                    fired.push_back(idx);
                }
            }
        }

        // consumed slot becomes the farthest-future one
        std::fill(ring[slot].begin(), ring[slot].end(), 0.0);

        if (!fired.empty()) {
            for (const auto& proj : net.projections()) {
                const std::size_t d = delay_steps(proj.delay_ms, opt.dt_ms);
                const std::size_t to = (k + d) % ring_size;
                const std::size_t src_lo = offset[proj.source];
                const std::size_t src_hi = offset[proj.source + 1];
                const std::size_t tgt = offset[proj.target];
                for (std::size_t idx : fired) {
                    if (idx < src_lo || idx >= src_hi) continue;
                    const auto i = static_cast<Eigen::Index>(idx - src_lo);
                    for (Eigen::Index j = 0; j < proj.weights.cols(); ++j)
                        ring[to][tgt + static_cast<std::size_t>(j)] += proj.weights(i, j);
                }
            }
        }
    }

    for (auto& train : rec.spikes) train.sort();
    return rec;
}

}  // namespace cogspike

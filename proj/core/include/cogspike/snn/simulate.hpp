#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cogspike/snn/network.hpp"
#include "cogspike/snn/spike_train.hpp"

namespace cogspike {

// Drive for one population. If `spikes` is set the population becomes a
// spike source: it emits exactly those events and its own dynamics are
// skipped. Otherwise `current` (per neuron, empty = 0) is injected every
// step on top of synaptic input.
struct PopulationInput {
    std::optional<SpikeTrain> spikes;
    std::vector<double> current;

    static PopulationInput forced(SpikeTrain t) {
        PopulationInput in;
        in.spikes = std::move(t);
        return in;
    }
    static PopulationInput constant(std::vector<double> c) {
        PopulationInput in;
        in.current = std::move(c);
        return in;
    }
    static PopulationInput constant(double c, std::uint32_t n) {
        return constant(std::vector<double>(n, c));
    }
};

struct SimOptions {
    double duration_ms = 0.0;
    double dt_ms = 1.0;
    std::uint64_t seed = 0;
    double noise_sigma = 0.0;  // per-step Gaussian current noise, 0 = off
    std::vector<std::string> record_membrane;
};

struct SimRecord {
    double duration_ms = 0.0;
    double dt_ms = 1.0;
    std::vector<SpikeTrain> spikes;  // aligned with network population order
    std::map<std::string, std::vector<std::vector<double>>> membrane;  // [neuron][step]
};

// Synchronous clock-driven run. Timing conventions, fixed across the whole
// toolkit:
//   - step k integrates [k*dt, (k+1)*dt); a threshold crossing during step k
//     is stamped k*dt
//   - a spike at time s reaches its targets max(1, ceil(delay/dt)) steps
//     after bucket floor(s/dt), so zero-delay projections still take one step
// Output is bit-identical for identical (network, inputs, options).
SimRecord simulate(const Network& net, const std::map<std::string, PopulationInput>& inputs,
                   const SimOptions& opt);

}  // namespace cogspike

#pragma once

#include <cstdint>
#include <vector>

#include "cogspike/snn/spike_train.hpp"

namespace cogspike {

// Independent Poisson spikes per neuron at the given rates. Deterministic
// for a given seed; each neuron draws from its own substream so adding a
// neuron never changes the others' spikes.
SpikeTrain encode_poisson(const std::vector<double>& rates_hz, double duration_ms,
                          std::uint64_t seed);

// Deterministic rate code: value v maps to round(v * duration_ms * max_rate)
// evenly spaced spikes centered in the window. max_rate is spikes per ms.
SpikeTrain encode_rate_window(const std::vector<double>& values, double duration_ms,
                              double max_rate_per_ms = 0.1);

}  // namespace cogspike

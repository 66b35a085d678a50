#pragma once

#include <string>
#include <string_view>

#include "cogspike/snn/network.hpp"
#include "cogspike/snn/spike_train.hpp"

namespace cogspike {

// JSON schema (see docs/formats.md): populations carry name, size and the
// full parameter set; projections carry endpoint names, delay, plasticity
// tag, and the weight matrix as row-major nested arrays (rows = source).
std::string network_to_json(const Network& net, int indent = -1);
Network network_from_json(std::string_view text);

// {"neuron_count": n, "duration_ms": d, "events": [[time, index], ...]}
std::string spike_train_to_json(const SpikeTrain& train, int indent = -1);
SpikeTrain spike_train_from_json(std::string_view text);

}  // namespace cogspike

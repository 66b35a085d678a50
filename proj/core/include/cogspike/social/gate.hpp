#pragma once

#include "cogspike/snn/spike_train.hpp"

namespace cogspike {

enum class GateMode { infer_other, act_self };

// Spiking selection between two evidence channels. A relay population
// receives both trains; the suppressed channel also drives feed-forward
// inhibitory neurons whose matched, one-step-earlier projection cancels its
// excitation at the relay, so only the selected channel's spikes survive.
// infer_other keeps other_signal, act_self keeps self_signal. The output is
// re-aligned to the input clock (the two-step relay latency is subtracted).
SpikeTrain inhibitory_gate(const SpikeTrain& self_signal, const SpikeTrain& other_signal,
                           GateMode mode);

}  // namespace cogspike

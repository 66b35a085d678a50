#pragma once

#include <cmath>
#include <stdexcept>

namespace cogspike {

// Leaky integrate-and-fire parameters. Defaults give a unit-threshold cell
// with a 10 ms membrane and 2 ms refractory period.
struct NeuronParams {
    double tau_m_ms = 10.0;        // membrane time constant
    double v_rest = 0.0;           // resting potential
    double v_threshold = 1.0;      // firing threshold
    double v_reset = 0.0;          // potential after a spike
    double t_refractory_ms = 2.0;  // absolute refractory period
    double resistance = 1.0;       // input resistance, scales current

    void validate() const {
        if (!(tau_m_ms > 0.0)) throw std::invalid_argument("neuron: tau_m must be positive");
        if (!(v_threshold > v_reset))
            throw std::invalid_argument("neuron: threshold must exceed reset");
        if (t_refractory_ms < 0.0)
            throw std::invalid_argument("neuron: refractory period must be >= 0");
        if (!(resistance > 0.0)) throw std::invalid_argument("neuron: resistance must be positive");
    }
};

struct NeuronState {
    double v = 0.0;
    double refractory_left_ms = 0.0;
    double threshold_offset = 0.0;  // homeostatic adjustment, see plasticity
};

// One exponential-Euler step of length dt_ms under a constant input current.
// Exact for piecewise-constant current, so coarse dt stays stable. Returns
// true if the neuron fired this step.
inline bool lif_step(NeuronState& s, const NeuronParams& p, double current, double dt_ms) {
    if (!(dt_ms > 0.0)) throw std::invalid_argument("lif_step: dt must be positive");
    if (!std::isfinite(current)) throw std::invalid_argument("lif_step: current must be finite");

    if (s.refractory_left_ms > 0.0) {
        s.refractory_left_ms = std::max(0.0, s.refractory_left_ms - dt_ms);
        s.v = p.v_reset;
        return false;
    }

    const double decay = std::exp(-dt_ms / p.tau_m_ms);
    s.v = p.v_rest + (s.v - p.v_rest) * decay + p.resistance * current * (1.0 - decay);

    if (s.v >= p.v_threshold + s.threshold_offset) {
        s.v = p.v_reset;
        s.refractory_left_ms = p.t_refractory_ms;
        return true;
    }
    return false;
}

}  // namespace cogspike

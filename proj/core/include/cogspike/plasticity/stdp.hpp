#pragma once

#include <cmath>
#include <stdexcept>

namespace cogspike {

struct StdpParams {
    double a_plus = 0.1;
    double a_minus = 0.12;
    double tau_plus_ms = 20.0;
    double tau_minus_ms = 20.0;
    double w_min = 0.0;
    double w_max = 1.0;

    void validate() const {
        if (!(tau_plus_ms > 0.0) || !(tau_minus_ms > 0.0))
            throw std::invalid_argument("stdp: time constants must be positive");
        if (w_min > w_max) throw std::invalid_argument("stdp: w_min must not exceed w_max");
    }
};

// Pairwise window. delta_t is post minus pre spike time; the boundary
// convention assigns 0 to exactly simultaneous pairs.
inline double stdp_delta(double delta_t_ms, const StdpParams& p) {
    if (!std::isfinite(delta_t_ms)) throw std::invalid_argument("stdp_delta: delta_t not finite");
    if (delta_t_ms > 0.0) return p.a_plus * std::exp(-delta_t_ms / p.tau_plus_ms);
    if (delta_t_ms < 0.0) return -p.a_minus * std::exp(delta_t_ms / p.tau_minus_ms);
    return 0.0;
}

}  // namespace cogspike

#include "cogspike/bodily/rubber_hand.hpp"

#include <cmath>
#include <stdexcept>

namespace cogspike {

DriftResult run_rubber_hand(double angle_deg, bool synchronous, const RubberHandConfig& cfg) {
    if (angle_deg < 0.0) throw std::invalid_argument("rubber hand: angle must be >= 0");

    DriftResult out;
    out.deflection_angle_deg = angle_deg;

    if (angle_deg > cfg.theta_max_deg) {
        out.proprioceptive_drift_deg = 0.0;
        out.dominant_modality = Modality::proprioception;
        return out;
    }

    double drift = cfg.amplitude_deg * std::tanh(angle_deg / cfg.theta1_deg);
    if (!synchronous) drift *= cfg.async_factor;
    out.proprioceptive_drift_deg = drift;

    // visual weight = fraction of the deflection captured by the seen hand
    const double w_visual =
        angle_deg > 0.0 ? drift / angle_deg : cfg.amplitude_deg / cfg.theta1_deg;
    out.dominant_modality = w_visual >= 0.5 ? Modality::vision : Modality::proprioception;
    return out;
}

}  // namespace cogspike

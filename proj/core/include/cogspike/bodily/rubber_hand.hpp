#pragma once

namespace cogspike {

// Saturating congruence model of visual capture. Drift follows
// amplitude * tanh(angle / theta1) while the deflection stays plausible,
// and collapses to zero past theta_max where vision is discounted entirely.
struct RubberHandConfig {
    double amplitude_deg = 14.0;
    double theta1_deg = 20.0;    // small-angle regime boundary
    double theta_max_deg = 60.0; // integration cutoff
    double async_factor = 0.15;  // residual capture without synchrony
};

enum class Modality { vision, proprioception };

struct DriftResult {
    double deflection_angle_deg = 0.0;
    double proprioceptive_drift_deg = 0.0;
    Modality dominant_modality = Modality::vision;
};

DriftResult run_rubber_hand(double angle_deg, bool synchronous,
                            const RubberHandConfig& cfg = {});

}  // namespace cogspike

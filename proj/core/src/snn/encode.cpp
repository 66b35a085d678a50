#include "cogspike/snn/encode.hpp"

#include <cmath>
#include <stdexcept>

#include "cogspike/rng.hpp"

namespace cogspike {

SpikeTrain encode_poisson(const std::vector<double>& rates_hz, double duration_ms,
                          std::uint64_t seed) {
    if (duration_ms < 0.0) throw std::invalid_argument("encode_poisson: negative duration");
    SpikeTrain train(static_cast<std::uint32_t>(rates_hz.size()), duration_ms);
    Rng root(seed);
    for (std::size_t i = 0; i < rates_hz.size(); ++i) {
        const double rate = rates_hz[i];
        if (rate < 0.0) throw std::invalid_argument("encode_poisson: negative rate");
        if (rate == 0.0) continue;
        Rng rng = root.substream(i);
        const double rate_per_ms = rate / 1000.0;
        double t = rng.exponential(rate_per_ms);
        while (t < duration_ms) {
            train.push(t, static_cast<std::uint32_t>(i));
            t += rng.exponential(rate_per_ms);
        }
    }
    train.sort();
    return train;
}

SpikeTrain encode_rate_window(const std::vector<double>& values, double duration_ms,
                              double max_rate_per_ms) {
    if (duration_ms < 0.0) throw std::invalid_argument("encode_rate_window: negative duration");
    if (max_rate_per_ms < 0.0) throw std::invalid_argument("encode_rate_window: negative max rate");
    SpikeTrain train(static_cast<std::uint32_t>(values.size()), duration_ms);
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double v = values[i];
        if (v < 0.0 || v > 1.0)
            throw std::invalid_argument("encode_rate_window: value outside [0,1]");
        const auto count = static_cast<std::size_t>(std::llround(v * duration_ms * max_rate_per_ms));
        if (count == 0) continue;
        // centered spacing keeps all events strictly inside [0, duration)
        const double gap = duration_ms / static_cast<double>(count);
        for (std::size_t k = 0; k < count; ++k)
            train.push((static_cast<double>(k) + 0.5) * gap, static_cast<std::uint32_t>(i));
    }
    train.sort();
    return train;
}

}  // namespace cogspike

#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace cogspike {

struct SpikeEvent {
    double time_ms = 0.0;
    std::uint32_t neuron = 0;

    friend bool operator==(const SpikeEvent&, const SpikeEvent&) = default;
};

inline bool spike_event_less(const SpikeEvent& a, const SpikeEvent& b) {
    if (a.time_ms != b.time_ms) return a.time_ms < b.time_ms;
    return a.neuron < b.neuron;
}

// Ordered spike events for a group of neurons over [0, duration_ms).
struct SpikeTrain {
    std::uint32_t neuron_count = 0;
    double duration_ms = 0.0;
    std::vector<SpikeEvent> events;

    SpikeTrain() = default;
    SpikeTrain(std::uint32_t n, double duration) : neuron_count(n), duration_ms(duration) {}

    void push(double time_ms, std::uint32_t neuron) { events.push_back({time_ms, neuron}); }

    std::size_t size() const { return events.size(); }
    bool empty() const { return events.empty(); }

    void sort() { std::stable_sort(events.begin(), events.end(), spike_event_less); }

    // Throws if any event is out of range or the order is broken.
    void validate() const {
        for (std::size_t i = 0; i < events.size(); ++i) {
            const auto& e = events[i];
            if (e.time_ms < 0.0 || e.time_ms >= duration_ms)
                throw std::invalid_argument("spike train: event time out of [0, duration)");
            if (e.neuron >= neuron_count)
                throw std::invalid_argument("spike train: neuron index out of range");
            if (i > 0 && spike_event_less(e, events[i - 1]))
                throw std::invalid_argument("spike train: events not sorted by (time, neuron)");
        }
    }

    std::vector<std::size_t> counts_per_neuron() const {
        std::vector<std::size_t> counts(neuron_count, 0);
        for (const auto& e : events) counts.at(e.neuron)++;
        return counts;
    }

    std::vector<double> rates_hz() const {
        std::vector<double> r(neuron_count, 0.0);
        if (duration_ms <= 0.0) return r;
        for (const auto& e : events) r.at(e.neuron) += 1.0;
        for (auto& v : r) v *= 1000.0 / duration_ms;
        return r;
    }

    // Copy with every event shifted by offset_ms; events leaving the window
    // are dropped.
    SpikeTrain shifted(double offset_ms) const {
        SpikeTrain out(neuron_count, duration_ms);
        for (const auto& e : events) {
            const double t = e.time_ms + offset_ms;
            if (t >= 0.0 && t < duration_ms) out.push(t, e.neuron);
        }
        return out;
    }

    friend bool operator==(const SpikeTrain&, const SpikeTrain&) = default;
};

// Superposition of two trains over the same neuron group.
inline SpikeTrain merge(const SpikeTrain& a, const SpikeTrain& b) {
    if (a.neuron_count != b.neuron_count)
        throw std::invalid_argument("merge: neuron counts differ");
    SpikeTrain out(a.neuron_count, std::max(a.duration_ms, b.duration_ms));
    out.events.resize(a.events.size() + b.events.size());
    std::merge(a.events.begin(), a.events.end(), b.events.begin(), b.events.end(),
               out.events.begin(), spike_event_less);
    return out;
}

}  // namespace cogspike

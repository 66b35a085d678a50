#include "cogspike/social/gate.hpp"

#include <Eigen/Dense>
#include <stdexcept>

#include "cogspike/snn/network.hpp"
#include "cogspike/snn/simulate.hpp"

namespace cogspike {

SpikeTrain inhibitory_gate(const SpikeTrain& self_signal, const SpikeTrain& other_signal,
                           GateMode mode) {
    if (self_signal.duration_ms != other_signal.duration_ms)
        throw std::invalid_argument("inhibitory_gate: train durations differ");
    if (self_signal.neuron_count != other_signal.neuron_count)
        throw std::invalid_argument("inhibitory_gate: neuron counts differ");
    self_signal.validate();
    other_signal.validate();

    const std::uint32_t n = self_signal.neuron_count;
    if (n == 0 || self_signal.duration_ms <= 0.0)
        return SpikeTrain(n, self_signal.duration_ms);

    const SpikeTrain& pass = mode == GateMode::infer_other ? other_signal : self_signal;
    const SpikeTrain& stop = mode == GateMode::infer_other ? self_signal : other_signal;

    NeuronParams fast;
    fast.t_refractory_ms = 0.0;

    Network net;
    net.add_population("pass_in", n, fast);
    net.add_population("stop_in", n, fast);
    net.add_population("inhibit", n, fast);
    net.add_population("relay", n, fast);

    const Eigen::MatrixXd drive = Eigen::MatrixXd::Identity(n, n) * 15.0;
    net.connect("pass_in", "relay", drive, 2.0);
    net.connect("stop_in", "relay", drive, 2.0);
    net.connect("stop_in", "inhibit", drive, 1.0);
    net.connect("inhibit", "relay", -drive, 1.0);

    SimOptions opt;
    opt.duration_ms = self_signal.duration_ms + 4.0;
    opt.dt_ms = 1.0;

    SpikeTrain pass_in = pass;
    SpikeTrain stop_in = stop;
    pass_in.duration_ms = opt.duration_ms;
    stop_in.duration_ms = opt.duration_ms;

    const SimRecord rec = simulate(net,
                                   {{"pass_in", PopulationInput::forced(std::move(pass_in))},
                                    {"stop_in", PopulationInput::forced(std::move(stop_in))}},
                                   opt);

    const SpikeTrain& relay = rec.spikes[net.index_of("relay")];
    SpikeTrain out(n, self_signal.duration_ms);
    for (const auto& e : relay.events) {
        const double t = e.time_ms - 2.0;
        if (t >= 0.0 && t < out.duration_ms) out.push(t, e.neuron);
    }
    return out;
}

}  // namespace cogspike

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cogspike/snn/neuron.hpp"

namespace cogspike {

struct Population {
    std::string name;
    std::uint32_t size = 0;
    NeuronParams params;
};

// Weight matrix is [source_size x target_size]; weights[i][j] is the synapse
// from source neuron i to target neuron j. The plasticity tag is interpreted
// by whichever trainer owns the network; the simulator treats all weights as
// static.
struct Projection {
    std::uint32_t source = 0;
    std::uint32_t target = 0;
    Eigen::MatrixXd weights;
    double delay_ms = 1.0;
    std::string plasticity;
};

class Network {
public:
    std::uint32_t add_population(std::string name, std::uint32_t size,
                                 const NeuronParams& params = {});

    std::uint32_t connect(std::string_view source, std::string_view target,
                          Eigen::MatrixXd weights, double delay_ms = 1.0,
                          std::string plasticity = {});
    std::uint32_t connect(std::uint32_t source, std::uint32_t target, Eigen::MatrixXd weights,
                          double delay_ms = 1.0, std::string plasticity = {});

    const std::vector<Population>& populations() const { return populations_; }
    const std::vector<Projection>& projections() const { return projections_; }

    const Population& population(std::uint32_t index) const { return populations_.at(index); }
    Projection& projection(std::uint32_t index) { return projections_.at(index); }
    const Projection& projection(std::uint32_t index) const { return projections_.at(index); }

    // Throws if the name is unknown.
    std::uint32_t index_of(std::string_view name) const;
    bool has_population(std::string_view name) const;

    std::uint32_t total_neurons() const;

private:
    std::vector<Population> populations_;
    std::vector<Projection> projections_;
};

}  // namespace cogspike

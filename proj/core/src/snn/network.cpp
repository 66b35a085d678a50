#include "cogspike/snn/network.hpp"

#include <stdexcept>

namespace cogspike {

std::uint32_t Network::add_population(std::string name, std::uint32_t size,
                                      const NeuronParams& params) {
    if (name.empty()) throw std::invalid_argument("add_population: empty name");
    if (size == 0) throw std::invalid_argument("add_population: size must be positive");
    if (has_population(name))
        throw std::invalid_argument("add_population: duplicate name '" + name + "'");
    params.validate();
    populations_.push_back({std::move(name), size, params});
    return static_cast<std::uint32_t>(populations_.size() - 1);
}

std::uint32_t Network::connect(std::string_view source, std::string_view target,
                               Eigen::MatrixXd weights, double delay_ms,
                               std::string plasticity) {
    return connect(index_of(source), index_of(target), std::move(weights), delay_ms,
                   std::move(plasticity));
}

std::uint32_t Network::connect(std::uint32_t source, std::uint32_t target,
                               Eigen::MatrixXd weights, double delay_ms,
                               std::string plasticity) {
    if (source >= populations_.size() || target >= populations_.size())
        throw std::invalid_argument("connect: population index out of range");
    if (weights.rows() != populations_[source].size || weights.cols() != populations_[target].size)
        throw std::invalid_argument("connect: weight matrix shape does not match populations");
    if (!weights.allFinite()) throw std::invalid_argument("connect: weights must be finite");
    if (delay_ms < 0.0) throw std::invalid_argument("connect: delay must be >= 0");
    projections_.push_back({source, target, std::move(weights), delay_ms, std::move(plasticity)});
    return static_cast<std::uint32_t>(projections_.size() - 1);
}

std::uint32_t Network::index_of(std::string_view name) const {
    for (std::uint32_t i = 0; i < populations_.size(); ++i)
        if (populations_[i].name == name) return i;
    throw std::invalid_argument("network: unknown population '" + std::string(name) + "'");
}

bool Network::has_population(std::string_view name) const {
    for (const auto& p : populations_)
        if (p.name == name) return true;
    return false;
}

std::uint32_t Network::total_neurons() const {
    std::uint32_t n = 0;
    for (const auto& p : populations_) n += p.size;
    return n;
}

}  // namespace cogspike

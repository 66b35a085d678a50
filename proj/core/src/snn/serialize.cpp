#include "cogspike/snn/serialize.hpp"

#include <json.hpp>
#include <stdexcept>

namespace cogspike {

using nlohmann::json;

std::string network_to_json(const Network& net, int indent) {
    json j;
    j["populations"] = json::array();
    for (const auto& p : net.populations()) {
        j["populations"].push_back({
            {"name", p.name},
            {"size", p.size},
            {"params",
             {{"tau_m_ms", p.params.tau_m_ms},
              {"v_rest", p.params.v_rest},
              {"v_threshold", p.params.v_threshold},
              {"v_reset", p.params.v_reset},
              {"t_refractory_ms", p.params.t_refractory_ms},
              {"resistance", p.params.resistance}}},
        });
    }
    j["projections"] = json::array();
    for (const auto& proj : net.projections()) {
        json rows = json::array();
        for (Eigen::Index r = 0; r < proj.weights.rows(); ++r) {
            json row = json::array();
            for (Eigen::Index c = 0; c < proj.weights.cols(); ++c)
                row.push_back(proj.weights(r, c));
            rows.push_back(std::move(row));
        }
        j["projections"].push_back({
            {"source", net.population(proj.source).name},
            {"target", net.population(proj.target).name},
            {"delay_ms", proj.delay_ms},
            {"plasticity", proj.plasticity},
            {"weights", std::move(rows)},
        });
    }
    return j.dump(indent);
}

Network network_from_json(std::string_view text) {
    const json j = json::parse(text);
    Network net;
    for (const auto& jp : j.at("populations")) {
        NeuronParams params;
        const auto& pp = jp.at("params");
        params.tau_m_ms = pp.at("tau_m_ms").get<double>();
        params.v_rest = pp.at("v_rest").get<double>();
        params.v_threshold = pp.at("v_threshold").get<double>();
        params.v_reset = pp.at("v_reset").get<double>();
        params.t_refractory_ms = pp.at("t_refractory_ms").get<double>();
        params.resistance = pp.at("resistance").get<double>();
        net.add_population(jp.at("name").get<std::string>(), jp.at("size").get<std::uint32_t>(),
                           params);
    }
    for (const auto& jp : j.at("projections")) {
        const auto& rows = jp.at("weights");
        if (!rows.is_array() || rows.empty())
            throw std::invalid_argument("network json: weights must be a non-empty array");
        const auto n_rows = static_cast<Eigen::Index>(rows.size());
        const auto n_cols = static_cast<Eigen::Index>(rows[0].size());
        Eigen::MatrixXd w(n_rows, n_cols);
        for (Eigen::Index r = 0; r < n_rows; ++r) {
            const auto& row = rows[static_cast<std::size_t>(r)];
            if (static_cast<Eigen::Index>(row.size()) != n_cols)
                throw std::invalid_argument("network json: ragged weight matrix");
            for (Eigen::Index c = 0; c < n_cols; ++c)
                w(r, c) = row[static_cast<std::size_t>(c)].get<double>();
        }
        net.connect(jp.at("source").get<std::string>(), jp.at("target").get<std::string>(),
                    std::move(w), jp.at("delay_ms").get<double>(),
                    jp.value("plasticity", std::string{}));
    }
    return net;
}

std::string spike_train_to_json(const SpikeTrain& train, int indent) {
    json j;
    j["neuron_count"] = train.neuron_count;
    j["duration_ms"] = train.duration_ms;
    j["events"] = json::array();
    for (const auto& e : train.events) j["events"].push_back({e.time_ms, e.neuron});
    return j.dump(indent);
}

SpikeTrain spike_train_from_json(std::string_view text) {
    const json j = json::parse(text);
    SpikeTrain train(j.at("neuron_count").get<std::uint32_t>(),
                     j.at("duration_ms").get<double>());
    for (const auto& e : j.at("events"))
        train.push(e.at(0).get<double>(), e.at(1).get<std::uint32_t>());
    train.validate();
    return train;
}

}  // namespace cogspike

#include "cogspike/concepts/fixture.hpp"

#include <json.hpp>
#include <algorithm>
#include <stdexcept>

#include "cogspike/rng.hpp"

namespace cogspike {

using nlohmann::json;

void ConceptFixtureConfig::validate() const {
    if (n_classes < 4 || n_classes % 2 != 0)
        throw std::invalid_argument("concept fixture: n_classes must be even and >= 4");
    if (samples_per_class < 1)
        throw std::invalid_argument("concept fixture: samples_per_class must be >= 1");
    if (dims < 1) throw std::invalid_argument("concept fixture: dims must be >= 1");
    if (noise_sigma < 0.0)
        throw std::invalid_argument("concept fixture: negative noise_sigma");
    if (duration_ms <= 0.0)
        throw std::invalid_argument("concept fixture: duration must be positive");
    if (align_window_ms < 0.0)
        throw std::invalid_argument("concept fixture: negative align window");
}

namespace {

std::vector<double> random_base(Rng rng, int dims) {
    std::vector<double> base(static_cast<std::size_t>(dims));
    for (auto& v : base) v = rng.uniform(0.1, 0.9);
    return base;
}

std::vector<double> jitter(const std::vector<double>& base, double sigma, Rng& rng) {
    std::vector<double> out(base.size());
    for (std::size_t i = 0; i < base.size(); ++i)
        out[i] = std::clamp(base[i] + sigma * rng.normal(), 0.0, 1.0);
    return out;
}

Eigen::VectorXd count_vector(const SpikeTrain& train) {
    const auto counts = train.counts_per_neuron();
    Eigen::VectorXd v(static_cast<Eigen::Index>(counts.size()));
    for (std::size_t i = 0; i < counts.size(); ++i)
        v(static_cast<Eigen::Index>(i)) = static_cast<double>(counts[i]);
    return v;
}

}  // namespace

ConceptFixture make_concept_fixture(std::uint64_t seed,
                                    const ConceptFixtureConfig& cfg) {
    cfg.validate();
    ConceptFixture fx;
    fx.seed = seed;
    fx.config = cfg;

    Rng root(seed);
    const int groups = cfg.n_classes / 2;
    std::vector<std::vector<double>> vision_groups(static_cast<std::size_t>(groups));
    std::vector<std::vector<double>> text_groups(static_cast<std::size_t>(groups));
    for (int g = 0; g < groups; ++g) {
        vision_groups[g] = random_base(
            root.substream("vision-base").substream(static_cast<std::uint64_t>(g)),
            cfg.dims);
        text_groups[g] = random_base(
            root.substream("text-base").substream(static_cast<std::uint64_t>(g)),
            cfg.dims);
    }

    fx.vision_base.resize(static_cast<std::size_t>(cfg.n_classes));
    fx.text_base.resize(static_cast<std::size_t>(cfg.n_classes));
    for (int c = 0; c < cfg.n_classes; ++c) {
        fx.vision_base[c] = vision_groups[c / 2];
        fx.text_base[c] = text_groups[c % groups];
    }

    for (int c = 0; c < cfg.n_classes; ++c) {
        for (int s = 0; s < cfg.samples_per_class; ++s) {
            Rng draw = root.substream("sample")
                           .substream(static_cast<std::uint64_t>(c))
                           .substream(static_cast<std::uint64_t>(s));
            ConceptSample sample;
            sample.label = c;
            sample.vision = {"vision", jitter(fx.vision_base[c], cfg.noise_sigma, draw),
                             ModalitySource::sensory};
            sample.text = {"text", jitter(fx.text_base[c], cfg.noise_sigma, draw),
                           ModalitySource::text_derived};
            fx.samples.push_back(std::move(sample));
        }
    }
    return fx;
}

std::string fixture_to_json(const ConceptFixture& fixture, int indent) {
    json j;
    j["seed"] = fixture.seed;
    j["config"] = {{"n_classes", fixture.config.n_classes},
                   {"samples_per_class", fixture.config.samples_per_class},
                   {"dims", fixture.config.dims},
                   {"noise_sigma", fixture.config.noise_sigma},
                   {"duration_ms", fixture.config.duration_ms},
                   {"align_window_ms", fixture.config.align_window_ms}};
    j["vision_base"] = fixture.vision_base;
    j["text_base"] = fixture.text_base;
    j["samples"] = json::array();
    for (const auto& s : fixture.samples)
        j["samples"].push_back({{"label", s.label},
                                {"vision", s.vision.features},
                                {"text", s.text.features}});
    return j.dump(indent);
}

namespace {

SpikeTrain base_train(const std::vector<double>& base, const ConceptFixtureConfig& cfg) {
    ModalityRepr repr{"base", base, ModalitySource::sensory};
    return to_spike_train(repr, cfg.duration_ms);
}

}  // namespace

std::vector<ConceptPrototype> fused_prototypes(const ConceptFixture& fixture) {
    std::vector<ConceptPrototype> protos;
    for (int c = 0; c < fixture.config.n_classes; ++c) {
        const FusedConcept fused =
            sliding_coordinate(base_train(fixture.vision_base[c], fixture.config),
                               base_train(fixture.text_base[c], fixture.config),
                               fixture.config.align_window_ms);
        protos.push_back({c, count_vector(fused.train)});
    }
    return protos;
}

std::vector<ConceptPrototype> vision_prototypes(const ConceptFixture& fixture) {
    std::vector<ConceptPrototype> protos;
    for (int c = 0; c < fixture.config.n_classes; ++c)
        protos.push_back({c, count_vector(base_train(fixture.vision_base[c], fixture.config))});
    return protos;
}

std::vector<ConceptPrototype> text_prototypes(const ConceptFixture& fixture) {
    std::vector<ConceptPrototype> protos;
    for (int c = 0; c < fixture.config.n_classes; ++c)
        protos.push_back({c, count_vector(base_train(fixture.text_base[c], fixture.config))});
    return protos;
}

ConceptAccuracy concept_benchmark(const ConceptFixture& fixture) {
    const auto fused_protos = fused_prototypes(fixture);
    const auto v_protos = vision_prototypes(fixture);
    const auto t_protos = text_prototypes(fixture);

    int fused_hits = 0;
    int vision_hits = 0;
    int text_hits = 0;
    for (const auto& sample : fixture.samples) {
        const SpikeTrain v = to_spike_train(sample.vision, fixture.config.duration_ms);
        const SpikeTrain t = to_spike_train(sample.text, fixture.config.duration_ms);
        const SpikeTrain none(v.neuron_count, v.duration_ms);

        const FusedConcept fused = sliding_coordinate(v, t, fixture.config.align_window_ms);
        if (classify_concept(fused, fused_protos) == sample.label) fused_hits++;
        if (classify_concept(sliding_coordinate(v, none, 0.0), v_protos) == sample.label)
            vision_hits++;
        if (classify_concept(sliding_coordinate(t, none, 0.0), t_protos) == sample.label)
            text_hits++;
    }

    const double total = static_cast<double>(fixture.samples.size());
    return {100.0 * fused_hits / total, 100.0 * vision_hits / total,
            100.0 * text_hits / total};
}

}  // namespace cogspike

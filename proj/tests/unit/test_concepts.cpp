#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "cogspike/concepts/fixture.hpp"
#include "cogspike/concepts/fusion.hpp"
#include "cogspike/rng.hpp"
#include "cogspike/snn/encode.hpp"

using namespace cogspike;

TEST_CASE("to_spike_train: rate code basics") {
    ModalityRepr zero{"m", {0.0, 0.0, 0.0}, ModalitySource::sensory};
    CHECK(to_spike_train(zero, 100.0).empty());

    ModalityRepr one_hot{"m", {0.0, 1.0, 0.0}, ModalitySource::sensory};
    const SpikeTrain t = to_spike_train(one_hot, 100.0);
    CHECK(t.size() == 10);
    for (const auto& e : t.events) CHECK(e.neuron == 1);

    // identical representations give identical trains
    CHECK(to_spike_train(one_hot, 100.0) == t);
}

TEST_CASE("to_spike_train: doubling the window doubles per-neuron counts") {
    // tenth-step values make value*duration*rate integral, so rounding is
    // exact and the doubling holds per neuron
    std::vector<double> values;
    for (int i = 0; i <= 10; ++i) values.push_back(0.1 * i);
    ModalityRepr repr{"m", values, ModalitySource::text_derived};

    const auto short_counts = to_spike_train(repr, 100.0).counts_per_neuron();
    const auto long_counts = to_spike_train(repr, 200.0).counts_per_neuron();
    for (std::size_t i = 0; i < values.size(); ++i)
        CHECK(long_counts[i] == 2 * short_counts[i]);
}

TEST_CASE("to_spike_train: features outside [0,1] rejected") {
    CHECK_THROWS_AS(
        to_spike_train({"m", {0.5, 1.2}, ModalitySource::sensory}, 100.0),
        std::invalid_argument);
    CHECK_THROWS_AS(
        to_spike_train({"m", {-0.1}, ModalitySource::sensory}, 100.0),
        std::invalid_argument);
    const double nan = std::nan("");
    CHECK_THROWS_AS(to_spike_train({"m", {nan}, ModalitySource::sensory}, 100.0),
                    std::invalid_argument);
}

namespace {

// spikes kept away from the window edges so small shifts drop nothing
SpikeTrain margin_train(std::uint64_t seed, std::uint32_t neurons, double duration) {
    Rng rng(seed);
    SpikeTrain t(neurons, duration);
    for (std::uint32_t n = 0; n < neurons; ++n) {
        const int spikes = 3 + static_cast<int>(rng.uniform_int(5));
        for (int k = 0; k < spikes; ++k)
            t.push(rng.uniform(10.0, duration - 10.0), n);
    }
    t.sort();
    return t;
}

}  // namespace

TEST_CASE("sliding coordination: constructed +7 ms shift wins at -7") {
    const SpikeTrain a = margin_train(11, 6, 100.0);
    const SpikeTrain b = a.shifted(7.0);
    REQUIRE(b.size() == a.size());

    const FusedConcept fused = sliding_coordinate(a, b, 7.0);
    CHECK(fused.offset_ms == -7.0);
    CHECK(fused.total_coincidences() == a.size());

    const auto counts = a.counts_per_neuron();
    for (std::uint32_t n = 0; n < a.neuron_count; ++n)
        CHECK(fused.coincidences[n] == counts[n]);

    // the fused train is the superposition at the winning offset
    CHECK(fused.train == merge(a, b.shifted(-7.0)));
}

TEST_CASE("sliding coordination: empty first train is the identity") {
    const SpikeTrain b = margin_train(12, 4, 80.0);
    const SpikeTrain empty(4, 80.0);

    const FusedConcept fused = sliding_coordinate(empty, b, 10.0);
    CHECK(fused.offset_ms == 0.0);
    CHECK(fused.total_coincidences() == 0);
    CHECK(fused.train == b);

    const FusedConcept other_way = sliding_coordinate(b, empty, 10.0);
    CHECK(other_way.offset_ms == 0.0);
    CHECK(other_way.train == b);
}

TEST_CASE("sliding coordination: preconditions") {
    const SpikeTrain a(3, 50.0);
    const SpikeTrain b(4, 50.0);
    CHECK_THROWS_AS(sliding_coordinate(a, b, 5.0), std::invalid_argument);
    const SpikeTrain c(3, 50.0);
    CHECK_THROWS_AS(sliding_coordinate(a, c, -1.0), std::invalid_argument);
}

TEST_CASE("sliding coordination: mirrored arguments, mirrored offset") {
    for (std::uint64_t seed = 20; seed < 32; ++seed) {
        Rng rng(seed);
        std::vector<double> rates_a(8), rates_b(8);
        for (auto& r : rates_a) r = rng.uniform(5.0, 40.0);
        for (auto& r : rates_b) r = rng.uniform(5.0, 40.0);
        const SpikeTrain a = encode_poisson(rates_a, 200.0, rng.substream("a").next_u64());
        const SpikeTrain b = encode_poisson(rates_b, 200.0, rng.substream("b").next_u64());

        const FusedConcept ab = sliding_coordinate(a, b, 12.0);
        const FusedConcept ba = sliding_coordinate(b, a, 12.0);
        CHECK(ab.offset_ms == -ba.offset_ms);
        CHECK(ab.coincidences == ba.coincidences);

        // winning offset is at least as good as no offset
        const FusedConcept at_zero = sliding_coordinate(a, b, 0.0);
        CHECK(ab.total_coincidences() >= at_zero.total_coincidences());
    }
}

TEST_CASE("sliding coordination: independent trains sit at chance level") {
    Rng rng(77);
    std::vector<double> rates(10, 20.0);
    const SpikeTrain a = encode_poisson(rates, 300.0, rng.substream("a").next_u64());
    const SpikeTrain b = encode_poisson(rates, 300.0, rng.substream("b").next_u64());

    const std::size_t observed = sliding_coordinate(a, b, 10.0).total_coincidences();

    // null distribution: redraw b's spike times uniformly, same counts
    std::size_t null_min = a.size();
    std::size_t null_max = 0;
    const auto counts = b.counts_per_neuron();
    for (int trial = 0; trial < 200; ++trial) {
        Rng shuffle = rng.substream("shuffle").substream(static_cast<std::uint64_t>(trial));
        SpikeTrain surrogate(b.neuron_count, b.duration_ms);
        for (std::uint32_t n = 0; n < b.neuron_count; ++n)
            for (std::size_t k = 0; k < counts[n]; ++k)
                surrogate.push(shuffle.uniform(0.0, b.duration_ms), n);
        surrogate.sort();
        const std::size_t c = sliding_coordinate(a, surrogate, 10.0).total_coincidences();
        null_min = std::min(null_min, c);
        null_max = std::max(null_max, c);
    }
    CHECK(observed >= null_min);
    CHECK(observed <= null_max);
    // far below the perfect-match ceiling
    CHECK(observed < a.size() / 2);
}

TEST_CASE("classification: exact prototype match and tie rules") {
    const SpikeTrain t = margin_train(31, 5, 100.0);
    FusedConcept fused;
    fused.train = t;
    fused.coincidences.assign(5, 0);

    const auto counts = t.counts_per_neuron();
    Eigen::VectorXd v(5);
    for (int i = 0; i < 5; ++i) v(i) = static_cast<double>(counts[i]);

    std::vector<ConceptPrototype> protos;
    protos.push_back({4, 2.0 * v});  // same direction, scaled: cosine 1
    protos.push_back({9, Eigen::VectorXd::Ones(5)});
    CHECK(classify_concept(fused, protos) == 4);

    // identical prototypes tie; the lowest label wins regardless of order
    std::vector<ConceptPrototype> tied;
    tied.push_back({5, v});
    tied.push_back({2, v});
    CHECK(classify_concept(fused, tied) == 2);

    // a zero-norm prototype never wins against any real one
    std::vector<ConceptPrototype> with_zero;
    with_zero.push_back({0, Eigen::VectorXd::Zero(5)});
    with_zero.push_back({7, Eigen::VectorXd::Ones(5)});
    CHECK(classify_concept(fused, with_zero) == 7);
}

TEST_CASE("classification: degenerate inputs") {
    FusedConcept empty;
    empty.train = SpikeTrain(3, 50.0);
    empty.coincidences.assign(3, 0);

    std::vector<ConceptPrototype> protos;
    protos.push_back({0, Eigen::VectorXd::Ones(3)});
    CHECK(classify_concept(empty, protos) == kUnclassifiable);

    CHECK_THROWS_AS(classify_concept(empty, {}), std::invalid_argument);

    FusedConcept fused;
    fused.train = margin_train(32, 3, 50.0);
    std::vector<ConceptPrototype> wrong_dim;
    wrong_dim.push_back({0, Eigen::VectorXd::Ones(4)});
    CHECK_THROWS_AS(classify_concept(fused, wrong_dim), std::invalid_argument);
}

TEST_CASE("fixture: reproducible from the seed, structured sharing") {
    const ConceptFixture fx = make_concept_fixture(5);
    const ConceptFixture again = make_concept_fixture(5);
    CHECK(fixture_to_json(fx) == fixture_to_json(again));
    CHECK(fixture_to_json(make_concept_fixture(6)) != fixture_to_json(fx));

    const int n = fx.config.n_classes;
    const int groups = n / 2;
    REQUIRE(n == 10);
    CHECK(fx.samples.size() == static_cast<std::size_t>(n * fx.config.samples_per_class));

    // classes 2k and 2k+1 share vision; classes c and c+n/2 share text
    for (int k = 0; k < groups; ++k)
        CHECK(fx.vision_base[2 * k] == fx.vision_base[2 * k + 1]);
    for (int c = 0; c < groups; ++c)
        CHECK(fx.text_base[c] == fx.text_base[c + groups]);

    // joint (vision, text) pair is unique per class
    for (int c = 0; c < n; ++c)
        for (int d = c + 1; d < n; ++d)
            CHECK((fx.vision_base[c] != fx.vision_base[d] ||
                   fx.text_base[c] != fx.text_base[d]));

    for (const auto& s : fx.samples) {
        for (double v : s.vision.features) CHECK((v >= 0.0 && v <= 1.0));
        for (double v : s.text.features) CHECK((v >= 0.0 && v <= 1.0));
    }
}

TEST_CASE("fixture: invalid configurations rejected") {
    ConceptFixtureConfig odd;
    odd.n_classes = 9;
    CHECK_THROWS_AS(make_concept_fixture(1, odd), std::invalid_argument);
    ConceptFixtureConfig tiny;
    tiny.n_classes = 2;
    CHECK_THROWS_AS(make_concept_fixture(1, tiny), std::invalid_argument);
    ConceptFixtureConfig flat;
    flat.dims = 0;
    CHECK_THROWS_AS(make_concept_fixture(1, flat), std::invalid_argument);
    ConceptFixtureConfig bad_noise;
    bad_noise.noise_sigma = -0.1;
    CHECK_THROWS_AS(make_concept_fixture(1, bad_noise), std::invalid_argument);
}

TEST_CASE("fixture: JSON schema") {
    const ConceptFixture fx = make_concept_fixture(9);
    const auto j = nlohmann::json::parse(fixture_to_json(fx, 2));
    CHECK(j["seed"].get<std::uint64_t>() == 9);
    CHECK(j["config"]["n_classes"].get<int>() == 10);
    CHECK(j["vision_base"].size() == 10);
    CHECK(j["text_base"].size() == 10);
    CHECK(j["samples"].size() == fx.samples.size());
    CHECK(j["samples"][0]["label"].get<int>() == 0);
    CHECK(j["samples"][0]["vision"].size() == static_cast<std::size_t>(fx.config.dims));
}

TEST_CASE("fusion beats either modality alone on the bimodal benchmark") {
    for (std::uint64_t seed : {1ULL, 2ULL}) {
        const ConceptFixture fx = make_concept_fixture(seed);
        const ConceptAccuracy acc = concept_benchmark(fx);

        // either modality alone is stuck at the pair ambiguity
        CHECK(acc.fused == 100.0);
        CHECK(acc.vision_only == 50.0);
        CHECK(acc.text_only == 50.0);
        CHECK(acc.fused >= std::max(acc.vision_only, acc.text_only));
    }
}

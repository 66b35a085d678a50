#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <vector>

#include "cogspike/rng.hpp"
#include "cogspike/social/belief.hpp"
#include "cogspike/social/gate.hpp"
#include "cogspike/social/mirror.hpp"
#include "cogspike/social/world.hpp"

using namespace cogspike;

namespace {

// Independent visibility oracle. Cone check via atan2; occluder check via an
// exact slab test: the segment between cell centers (doubled coordinates, so
// everything is integer) crosses a cell's open interior iff the open
// parameter intervals where it lies inside the x-slab and the y-slab overlap
// within (0, 1).
bool oracle_blocked_by(std::pair<int, int> from, std::pair<int, int> to,
                       std::pair<int, int> occ) {
    if (occ == from || occ == to) return false;
    const long long x0 = 2 * from.first, y0 = 2 * from.second;
    const long long dx = 2 * (to.first - from.first), dy = 2 * (to.second - from.second);
    const long long cx = 2 * occ.first, cy = 2 * occ.second;
    const long long den = std::max(1ll, std::llabs(dx)) * std::max(1ll, std::llabs(dy));

    long long lo = 0, hi = den;
    const auto tighten = [&](long long p0, long long d, long long c) {
        if (d == 0) {
            if (std::llabs(p0 - c) >= 1) hi = lo;  // outside the slab for every t
            return;
        }
        const long long scale = den / d;  // sign carries the interval flip
        const long long a = (c - 1 - p0) * scale;
        const long long b = (c + 1 - p0) * scale;
        lo = std::max(lo, std::min(a, b));
        hi = std::min(hi, std::max(a, b));
    };
    tighten(x0, dx, cx);
    tighten(y0, dy, cy);
    return lo < hi;
}

bool oracle_visible(const WorldState& w, const AgentPose& v, int tx, int ty) {
    const int dx = tx - v.position.first, dy = ty - v.position.second;
    if (dx != 0 || dy != 0) {
        const double angle = std::atan2(static_cast<double>(dy), static_cast<double>(dx)) * 180.0 /
                             3.14159265358979323846;
        double diff = std::fmod(angle - v.facing_deg, 360.0);
        if (diff > 180.0) diff -= 360.0;
        if (diff < -180.0) diff += 360.0;
        if (std::fabs(diff) > v.fov_deg + 1e-9) return false;
    }
    for (const auto& occ : w.occluders)
        if (oracle_blocked_by(v.position, {tx, ty}, occ)) return false;
    return true;
}

void check_against_oracle(const WorldState& w, const AgentPose& v) {
    const Percept p = perspective_transform(w, v);
    for (int y = 0; y < w.height; ++y)
        for (int x = 0; x < w.width; ++x) {
            if (p.sees(x, y) != oracle_visible(w, v, x, y)) {
                CAPTURE(w.width);
                CAPTURE(v.position.first);
                CAPTURE(v.position.second);
                CAPTURE(v.facing_deg);
                CAPTURE(v.fov_deg);
                CAPTURE(x);
                CAPTURE(y);
                REQUIRE(p.sees(x, y) == oracle_visible(w, v, x, y));
            }
        }
}

SpikeTrain train_of(std::vector<double> times, double duration, std::uint32_t n = 1,
                    std::uint32_t neuron = 0) {
    SpikeTrain t(n, duration);
    for (double time : times) t.push(time, neuron);
    t.sort();
    return t;
}

std::set<double> times_of(const SpikeTrain& t) {
    std::set<double> s;
    for (const auto& e : t.events) s.insert(e.time_ms);
    return s;
}

}  // namespace

TEST_CASE("perspective: ninety-degree half-angle sees the forward half-plane") {
    WorldState w;
    AgentPose v{{2, 2}, 0.0, 90.0, true};
    const Percept p = perspective_transform(w, v);
    for (int y = 0; y < 5; ++y)
        for (int x = 0; x < 5; ++x) CHECK(p.sees(x, y) == (x >= 2));
}

TEST_CASE("perspective: occluder shadows the cells behind it") {
    WorldState w;
    w.occluders = {{2, 2}};
    w.objects["cup"] = {3, 2};
    AgentPose v{{0, 2}, 0.0, 90.0, true};
    const Percept p = perspective_transform(w, v);
    CHECK(p.sees(2, 2));        // the occluder itself is in view
    CHECK_FALSE(p.sees(3, 2));  // dead behind it
    CHECK_FALSE(p.sees(4, 2));
    CHECK(p.sees(3, 1));  // beside the shadow
    CHECK(p.sees(3, 3));
    CHECK(p.objects.empty());
}

TEST_CASE("perspective: absent viewers see nothing, bad poses are rejected") {
    WorldState w;
    w.objects["cup"] = {3, 2};
    AgentPose gone{{2, 2}, 0.0, 90.0, false};
    const Percept p = perspective_transform(w, gone);
    CHECK(p.objects.empty());
    for (int y = 0; y < 5; ++y)
        for (int x = 0; x < 5; ++x) CHECK_FALSE(p.sees(x, y));

    CHECK_THROWS_AS(perspective_transform(w, AgentPose{{5, 2}, 0.0, 90.0, true}),
                    std::invalid_argument);
    CHECK_THROWS_AS(perspective_transform(w, AgentPose{{2, 2}, 0.0, 0.0, true}),
                    std::invalid_argument);
    CHECK_THROWS_AS(perspective_transform(w, AgentPose{{2, 2}, 0.0, 181.0, true}),
                    std::invalid_argument);
    WorldState bad;
    bad.occluders = {{7, 7}};
    CHECK_THROWS_AS(perspective_transform(bad, AgentPose{}), std::invalid_argument);
}

TEST_CASE("perspective: five-by-five single-occluder fixtures match the oracle") {
    for (int oy = 0; oy < 5; ++oy)
        for (int ox = 0; ox < 5; ++ox) {
            WorldState w;
            w.occluders = {{ox, oy}};
            for (int vy = 0; vy < 5; ++vy)
                for (int vx = 0; vx < 5; ++vx) {
                    for (double facing : {0.0, 90.0, 180.0, 270.0})
                        check_against_oracle(w, {{vx, vy}, facing, 90.0, true});
                    check_against_oracle(w, {{vx, vy}, 45.0, 180.0, true});
                }
        }
}

TEST_CASE("perspective: six-by-six two-occluder sample matches the oracle") {
    Rng rng(2024);
    for (int trial = 0; trial < 60; ++trial) {
        WorldState w;
        w.width = 6;
        w.height = 6;
        const auto a = static_cast<int>(rng.uniform_int(36));
        auto b = static_cast<int>(rng.uniform_int(36));
        if (b == a) b = (b + 7) % 36;
        w.occluders = {{a % 6, a / 6}, {b % 6, b / 6}};
        for (int vy = 0; vy < 6; ++vy)
            for (int vx = 0; vx < 6; ++vx) {
                const double facing = 45.0 * static_cast<double>(rng.uniform_int(8));
                const double fov = std::vector<double>{60.0, 90.0, 135.0, 180.0}[rng.uniform_int(4)];
                check_against_oracle(w, {{vx, vy}, facing, fov, true});
            }
    }
}

TEST_CASE("perspective: full-circle visibility is symmetric") {
    Rng rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        WorldState w;
        w.width = 6;
        w.height = 6;
        for (int i = 0; i < 2; ++i) {
            const auto c = static_cast<int>(rng.uniform_int(36));
            w.occluders.push_back({c % 6, c / 6});
        }
        std::vector<Percept> from;
        for (int y = 0; y < 6; ++y)
            for (int x = 0; x < 6; ++x)
                from.push_back(perspective_transform(w, {{x, y}, 0.0, 180.0, true}));
        for (int a = 0; a < 36; ++a)
            for (int b = 0; b < 36; ++b)
                CHECK(from[static_cast<std::size_t>(a)].sees(b % 6, b / 6) ==
                      from[static_cast<std::size_t>(b)].sees(a % 6, a / 6));
    }
}

TEST_CASE("gate: the selected channel survives, the suppressed one is silenced") {
    std::vector<double> self_times, other_times;
    for (int i = 0; i < 20; ++i) {
        self_times.push_back(5.0 + 10.0 * i);
        other_times.push_back(8.0 + 10.0 * i);
    }
    const SpikeTrain self_train = train_of(self_times, 210.0);
    const SpikeTrain other_train = train_of(other_times, 210.0);

    const SpikeTrain kept_other = inhibitory_gate(self_train, other_train, GateMode::infer_other);
    CHECK(kept_other.size() == other_train.size());
    const auto self_set = times_of(self_train);
    std::size_t leaked = 0;
    for (const auto& e : kept_other.events)
        if (self_set.count(e.time_ms)) ++leaked;
    CHECK(leaked == 0);
    CHECK(times_of(kept_other) == times_of(other_train));

    const SpikeTrain kept_self = inhibitory_gate(self_train, other_train, GateMode::act_self);
    CHECK(times_of(kept_self) == times_of(self_train));
}

TEST_CASE("gate: empty selected channel gives an empty output") {
    const SpikeTrain self_train = train_of({3, 9, 15, 21}, 40.0);
    const SpikeTrain quiet(1, 40.0);
    const SpikeTrain out = inhibitory_gate(self_train, quiet, GateMode::infer_other);
    CHECK(out.empty());
    CHECK(out.duration_ms == 40.0);
    CHECK(out.neuron_count == 1);
}

TEST_CASE("gate: exclusivity holds on dense disjoint trains across neurons") {
    Rng rng(42);
    SpikeTrain self_train(3, 400.0), other_train(3, 400.0);
    for (std::uint32_t n = 0; n < 3; ++n)
        for (int slot = 0; slot < 99; ++slot) {
            if (rng.bernoulli(0.7)) self_train.push(4.0 * slot + 1.0, n);
            if (rng.bernoulli(0.7)) other_train.push(4.0 * slot + 3.0, n);
        }
    self_train.sort();
    other_train.sort();

    const SpikeTrain out = inhibitory_gate(self_train, other_train, GateMode::infer_other);
    CHECK(std::fabs(static_cast<double>(out.size()) - static_cast<double>(other_train.size())) <=
          0.05 * static_cast<double>(other_train.size()));
    std::size_t leaked = 0;
    const auto self_set = times_of(self_train);
    for (const auto& e : out.events)
        if (self_set.count(e.time_ms)) ++leaked;
    CHECK(static_cast<double>(leaked) < 0.05 * static_cast<double>(out.size()));
    // per-neuron identity relay: the surviving events are exactly the other
    // channel's
    CHECK(out.events == other_train.events);
}

TEST_CASE("gate: mismatched trains are rejected") {
    CHECK_THROWS_AS(
        inhibitory_gate(SpikeTrain(1, 100.0), SpikeTrain(1, 90.0), GateMode::infer_other),
        std::invalid_argument);
    CHECK_THROWS_AS(
        inhibitory_gate(SpikeTrain(1, 100.0), SpikeTrain(2, 100.0), GateMode::infer_other),
        std::invalid_argument);
}

TEST_CASE("belief: an observer who saw everything believes the truth") {
    std::vector<WorldState> worlds;
    std::vector<AgentPose> other;
    ExperienceBuffer self_obs(8, 1);
    const std::vector<std::pair<int, int>> path = {{0, 0}, {2, 1}, {4, 3}};
    for (std::size_t t = 0; t < path.size(); ++t) {
        WorldState w;
        w.objects["ball"] = path[t];
        w.hazards = {{4, 0}};
        other.push_back({{2, 4}, 270.0, 180.0, true});
        worlds.push_back(w);
        self_obs.record({path[t].second * 5 + path[t].first, 0, 0.0, 0, "", t});
    }
    const Belief b = infer_belief(other, worlds, self_obs, 3);
    CHECK(b.owner == 3);
    REQUIRE(b.objects.at("ball").has_value());
    CHECK(*b.objects.at("ball") == std::pair{4, 3});
    CHECK(b.hazards.at({4, 0}));
}

TEST_CASE("belief: displacement while away leaves the stale location in place") {
    // three moves, the middle two unseen: belief pins to the last seen one
    std::vector<WorldState> worlds;
    std::vector<AgentPose> other;
    ExperienceBuffer self_obs(8, 1);
    const std::vector<std::pair<int, int>> path = {{1, 1}, {2, 2}, {3, 3}};
    const std::vector<bool> present = {true, false, false};
    for (std::size_t t = 0; t < path.size(); ++t) {
        WorldState w;
        w.objects["ball"] = path[t];
        other.push_back({{2, 4}, 270.0, 180.0, present[t]});
        worlds.push_back(w);
        self_obs.record({path[t].second * 5 + path[t].first, 0, 0.0, 0, "", t});
    }
    const Belief b = infer_belief(other, worlds, self_obs, 1);
    REQUIRE(b.objects.at("ball").has_value());
    CHECK(*b.objects.at("ball") == std::pair{1, 1});

    CHECK_THROWS_AS(infer_belief({}, {}, self_obs, 1), std::invalid_argument);
    CHECK_THROWS_AS(infer_belief(other, {worlds[0]}, self_obs, 1), std::invalid_argument);
}

TEST_CASE("belief: an object never seen stays unknown") {
    std::vector<WorldState> worlds(2);
    worlds[0].objects["ball"] = {4, 4};
    worlds[1].objects["ball"] = {4, 4};
    // facing away with a narrow cone
    std::vector<AgentPose> other(2, AgentPose{{0, 0}, 180.0, 30.0, true});
    const Belief b = infer_belief(other, worlds, ExperienceBuffer(4, 1), 1);
    CHECK_FALSE(b.objects.at("ball").has_value());
}

TEST_CASE("false belief: displaced-object script splits the two modes") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        CHECK(run_false_belief_task("sally-anne", true, seed) == std::pair{1, 1});
        CHECK(run_false_belief_task("sally-anne", false, seed) == std::pair{3, 1});
    }
}

TEST_CASE("false belief: a watcher who never leaves expects the true location") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        CHECK(run_false_belief_task("sally-stays", true, seed) == std::pair{3, 1});
        CHECK(run_false_belief_task("sally-stays", false, seed) == std::pair{3, 1});
    }
    CHECK_THROWS_AS(run_false_belief_task("sally-dances", true, 0), std::invalid_argument);
    CHECK(false_belief_variants().size() == 2);
}

TEST_CASE("hazard warning: fires only for unseen dangers on the other's path") {
    WorldState w;
    w.occluders = {{2, 2}};
    w.hazards = {{3, 2}};
    const AgentPose walker{{0, 2}, 0.0, 90.0, true};
    const AgentPose watcher{{3, 4}, 270.0, 90.0, true};
    w.agents = {walker, watcher};
    CHECK(warn_of_hazard(watcher, walker, w));

    // same layout, no occluder: the walker sees the hazard too
    WorldState open = w;
    open.occluders.clear();
    CHECK_FALSE(warn_of_hazard(watcher, walker, open));

    // hazard behind the occluder but off the walker's row
    WorldState off = w;
    off.hazards = {{3, 1}};
    CHECK_FALSE(warn_of_hazard(watcher, walker, off));

    AgentPose away = walker;
    away.present = false;
    CHECK_THROWS_AS(warn_of_hazard(watcher, away, w), std::invalid_argument);
}

TEST_CASE("mirror: watched actions re-activate the trained emotion") {
    MirrorSystem mirror;
    mirror.train_self_experience(0, Emotion::distress);
    mirror.train_self_experience(1, Emotion::positive);

    const auto [felt, who] = observe_action_empathy(mirror, 0, false);
    CHECK(felt.label == Emotion::distress);
    CHECK(felt.intensity > 0.9);
    CHECK(who == Attribution::other);

    const auto [own, self_who] = observe_action_empathy(mirror, 0, true);
    CHECK(own.label == Emotion::distress);
    CHECK(self_who == Attribution::self);

    // emotion sharing: observation picks the same winner as self-experience,
    // for every trained pair, regardless of the attribution flag
    for (const auto& [action, emotion] :
         std::vector<std::pair<int, Emotion>>{{0, Emotion::distress}, {1, Emotion::positive}}) {
        CHECK(mirror.observe(action, true).first.label == emotion);
        CHECK(mirror.observe(action, false).first.label == emotion);
        CHECK(mirror.observe(action, true).second == Attribution::self);
        CHECK(mirror.observe(action, false).second == Attribution::other);
    }
}

TEST_CASE("mirror: unpaired action reads neutral, attribution still works") {
    MirrorSystem mirror;
    mirror.train_self_experience(0, Emotion::distress);
    const auto [felt, who] = mirror.observe(2, false);
    CHECK(felt.label == Emotion::neutral);
    CHECK(felt.intensity == 0.0);
    CHECK(who == Attribution::other);
    CHECK(mirror.observe(2, true).second == Attribution::self);
}

TEST_CASE("mirror: untrained systems and bad actions are rejected") {
    MirrorSystem fresh;
    CHECK_FALSE(fresh.trained());
    CHECK_THROWS_AS(fresh.observe(0, false), std::invalid_argument);
    MirrorSystem mirror;
    mirror.train_self_experience(0, Emotion::positive);
    CHECK_THROWS_AS(mirror.observe(3, false), std::invalid_argument);
    CHECK_THROWS_AS(mirror.train_self_experience(-1, Emotion::neutral), std::invalid_argument);

    const auto [mlo, mhi] = mirror.mirror_range();
    const auto [alo, ahi] = mirror.anti_mirror_range();
    CHECK(mhi == alo);  // disjoint, adjacent subsets of the motor population
    CHECK(mlo < mhi);
    CHECK(alo < ahi);
}

TEST_CASE("altruism: rescue exactly when weighted distress beats the task") {
    const EmotionState distress{Emotion::distress, 0.8};
    const EmotionState calm{Emotion::neutral, 0.0};
    const EmotionState joy{Emotion::positive, 1.0};

    CHECK(decide_altruistic(0.5, distress, 1.0) == AltruisticChoice::rescue);
    CHECK(decide_altruistic(0.5, distress, 0.0) == AltruisticChoice::continue_task);
    for (double gain : {0.0, 0.5, 1.0, 5.0, 100.0}) {
        CHECK(decide_altruistic(0.0, calm, gain) == AltruisticChoice::continue_task);
        CHECK(decide_altruistic(0.3, joy, gain) == AltruisticChoice::continue_task);
    }
    CHECK_THROWS_AS(decide_altruistic(0.5, distress, -0.1), std::invalid_argument);

    // monotone in both gain and valence over a grid
    for (int g = 0; g < 10; ++g)
        for (int v = 0; v < 10; ++v) {
            const double gain = 0.25 * g;
            const double valence = 0.1 * v;
            const bool rescue = decide_altruistic(0.4, {Emotion::distress, valence}, gain) ==
                                AltruisticChoice::rescue;
            CHECK(rescue == (gain * valence > 0.4));
            if (rescue) {
                CHECK(decide_altruistic(0.4, {Emotion::distress, valence}, gain + 0.25) ==
                      AltruisticChoice::rescue);
                CHECK(decide_altruistic(0.4, {Emotion::distress, std::min(1.0, valence + 0.1)},
                                        gain) == AltruisticChoice::rescue);
            }
        }
}

#include "cogspike/social/belief.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "cogspike/rng.hpp"
#include "cogspike/social/gate.hpp"

namespace cogspike {

Belief infer_belief(const std::vector<AgentPose>& other_history,
                    const std::vector<WorldState>& world_history,
                    const ExperienceBuffer& self_experience, int other_id) {
    if (other_history.empty() || world_history.empty())
        throw std::invalid_argument("infer_belief: history is empty");
    if (other_history.size() != world_history.size())
        throw std::invalid_argument("infer_belief: pose and world histories differ in length");
    const int width = world_history.front().width;
    const int height = world_history.front().height;
    for (const auto& w : world_history)
        if (w.width != width || w.height != height)
            throw std::invalid_argument("infer_belief: grid size changes mid-history");

    const std::size_t steps = world_history.size();
    const int n_cells = width * height;
    // one time slot per history step, wide enough for a cell index plus the
    // gate's relay latency
    const int slot = n_cells + 4;
    const double duration = static_cast<double>(steps) * slot;

    std::vector<std::string> names;
    for (const auto& w : world_history)
        for (const auto& [name, cell] : w.objects) names.push_back(name);
    std::sort(names.begin(), names.end());
    names.erase(std::unique(names.begin(), names.end()), names.end());

    std::vector<Percept> seen(steps);
    for (std::size_t t = 0; t < steps; ++t)
        seen[t] = perspective_transform(world_history[t], other_history[t]);

    Belief belief;
    belief.owner = other_id;

    for (std::size_t i = 0; i < names.size(); ++i) {
        SpikeTrain other_evidence(1, duration);
        for (std::size_t t = 0; t < steps; ++t) {
            const auto it = seen[t].objects.find(names[i]);
            if (it == seen[t].objects.end()) continue;
            const int cell = it->second.second * width + it->second.first;
            other_evidence.push(static_cast<double>(t) * slot + cell, 0);
        }

        SpikeTrain self_evidence(1, duration);
        for (const auto& r : self_experience.query(
                 [&](const ExperienceRecord& rec) { return rec.action == static_cast<int>(i); }))
            if (r.timestamp < steps && r.state >= 0 && r.state < n_cells)
                self_evidence.push(static_cast<double>(r.timestamp) * slot + r.state, 0);
        self_evidence.sort();

        const SpikeTrain gated = inhibitory_gate(self_evidence, other_evidence, GateMode::infer_other);
        if (gated.empty()) {
            belief.objects[names[i]] = std::nullopt;
        } else {
            const double t = gated.events.back().time_ms;
            const auto step = static_cast<int>(t / slot);
            const auto cell = static_cast<int>(std::llround(t - static_cast<double>(step) * slot));
            belief.objects[names[i]] = std::pair{cell % width, cell / width};
        }
    }

    std::set<std::pair<int, int>> hazard_cells;
    for (const auto& w : world_history) hazard_cells.insert(w.hazards.begin(), w.hazards.end());
    for (const auto& cell : hazard_cells) {
        bool observed = false;
        for (std::size_t t = 0; t < steps && !observed; ++t)
            observed = std::find(seen[t].hazards.begin(), seen[t].hazards.end(), cell) !=
                       seen[t].hazards.end();
        belief.hazards[cell] = observed;
    }
    return belief;
}

namespace {

const std::vector<FalseBeliefScript>& scripts() {
    static const std::vector<FalseBeliefScript> all = {
        {"sally-anne", 5, 5, "marble", {1, 1}, {3, 1}, {{{1, 1}, true}, {{3, 1}, false}}},
        {"sally-stays", 5, 5, "marble", {1, 1}, {3, 1}, {{{1, 1}, true}, {{3, 1}, true}}},
    };
    return all;
}

}  // namespace

const FalseBeliefScript& false_belief_script(std::string_view variant) {
    for (const auto& s : scripts())
        if (s.name == variant) return s;
    std::string known;
    for (const auto& s : scripts()) {
        if (!known.empty()) known += ", ";
        known += s.name;
    }
    throw std::invalid_argument("unknown false-belief variant '" + std::string(variant) +
                                "'; known: " + known);
}

std::vector<std::string> false_belief_variants() {
    std::vector<std::string> names;
    for (const auto& s : scripts()) names.push_back(s.name);
    return names;
}

std::pair<int, int> run_false_belief_task(std::string_view variant, bool with_tom,
                                          std::uint64_t seed) {
    const FalseBeliefScript& script = false_belief_script(variant);

    // any column on the watch row sees both locations at these view widths
    Rng rng = Rng(seed).substream("viewpoint");
    const int watch_x = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(script.width)));
    const double fov = rng.uniform(60.0, 120.0);

    std::vector<WorldState> worlds;
    std::vector<AgentPose> other;
    ExperienceBuffer self_observations(script.steps.size() + 1, 1);
    for (std::size_t t = 0; t < script.steps.size(); ++t) {
        const auto& [cell, present] = script.steps[t];
        WorldState w;
        w.width = script.width;
        w.height = script.height;
        w.objects[script.object] = cell;
        AgentPose pose{{watch_x, 3}, 270.0, fov, present};
        w.agents = {pose};
        worlds.push_back(std::move(w));
        other.push_back(pose);

        const int cell_index = cell.second * script.width + cell.first;
        self_observations.record({cell_index, 0, 0.0, cell_index, "", t});
    }

    if (!with_tom) return worlds.back().objects.at(script.object);

    const Belief belief = infer_belief(other, worlds, self_observations, 1);
    const auto& believed = belief.objects.at(script.object);
    if (!believed) throw std::logic_error("run_false_belief_task: watcher never saw the object");
    return *believed;
}

}  // namespace cogspike

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cogspike/autonomous/experience.hpp"
#include "cogspike/social/world.hpp"

namespace cogspike {

struct Belief {
    int owner = 0;
    std::map<std::string, std::optional<std::pair<int, int>>> objects;  // nullopt = unknown
    std::map<std::pair<int, int>, bool> hazards;  // cell -> believed present
};

// Replays the shared history through the other agent's perspective: each
// object's believed location is the last place the other actually saw it.
// Self-perspective evidence comes from the experience buffer (records tagged
// action = object index in name order, state = cell index, timestamp = step)
// and is suppressed by the spiking gate so other-perspective evidence wins.
Belief infer_belief(const std::vector<AgentPose>& other_history,
                    const std::vector<WorldState>& world_history,
                    const ExperienceBuffer& self_experience, int other_id = 1);

// Scripted displacement scenario: an object moves between two locations
// while the watched agent is present or away.
struct FalseBeliefScript {
    std::string name;
    int width = 5;
    int height = 5;
    std::string object;
    std::pair<int, int> original_location;
    std::pair<int, int> final_location;
    std::vector<std::pair<std::pair<int, int>, bool>> steps;  // object cell, other present
};

const FalseBeliefScript& false_belief_script(std::string_view variant);
std::vector<std::string> false_belief_variants();

// Predicted search location for the watched agent. with_tom reads it off the
// inferred belief; the ablation answers with the object's true location. The
// seed varies the watcher's viewpoint without changing what they witness.
std::pair<int, int> run_false_belief_task(std::string_view variant, bool with_tom,
                                          std::uint64_t seed);

}  // namespace cogspike

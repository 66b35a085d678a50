#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace cogspike {

struct AgentPose {
    std::pair<int, int> position{0, 0};
    double facing_deg = 0.0;  // 0 = +x, 90 = +y
    double fov_deg = 90.0;    // half-angle of the view cone; 90 = forward half-plane
    bool present = true;

    void validate() const;
};

// Shared scene: occluders block sight (not movement), objects and hazards
// occupy cells, agents come and go via AgentPose::present.
struct WorldState {
    int width = 5;
    int height = 5;
    std::vector<std::pair<int, int>> occluders;
    std::map<std::string, std::pair<int, int>> objects;
    std::vector<std::pair<int, int>> hazards;
    std::vector<AgentPose> agents;

    bool in_bounds(int x, int y) const { return x >= 0 && x < width && y >= 0 && y < height; }
    bool occluded_at(int x, int y) const;
    void validate() const;
};

// What one viewer can currently see.
struct Percept {
    int width = 0;
    int height = 0;
    std::vector<char> visible;  // row-major cell mask
    std::map<std::string, std::pair<int, int>> objects;
    std::vector<std::pair<int, int>> hazards;
    std::vector<std::size_t> agents;  // indices into WorldState::agents

    bool sees(int x, int y) const {
        return x >= 0 && x < width && y >= 0 && y < height &&
               visible[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
                       static_cast<std::size_t>(x)] != 0;
    }
    bool sees(std::pair<int, int> cell) const { return sees(cell.first, cell.second); }
};

// A cell is visible when it lies inside the viewer's cone and the open
// segment between cell centers misses every occluder interior; grazing a
// corner does not block. An absent viewer sees nothing.
Percept perspective_transform(const WorldState& world, const AgentPose& viewer);

// True when some hazard sits on the other's straight-ahead path, hidden from
// the other's view but visible from self's.
bool warn_of_hazard(const AgentPose& self, const AgentPose& other, const WorldState& world);

}  // namespace cogspike

#pragma once

#include <utility>
#include <vector>

namespace cogspike {

struct GridWorldConfig {
    int width = 5;
    int height = 5;
    std::pair<int, int> start{0, 0};
    std::pair<int, int> goal{4, 4};
    std::vector<std::pair<int, int>> obstacles;  // impassable, bumping costs collision_penalty
    std::vector<std::pair<int, int>> hazards;    // aversive terminal cells
    double step_reward = -0.01;
    double goal_reward = 1.0;
    double collision_penalty = -0.2;
    double hazard_penalty = -1.0;
    double speed = 1.0;  // cells per action; fractional part carries to the next action
};

struct StepOutcome {
    double reward = 0.0;
    bool done = false;
    bool collided = false;
    bool reached_goal = false;
    bool hit_hazard = false;
};

// Four actions: 0 +x, 1 +y, 2 -x, 3 -y. Movement is resolved cell by cell,
// so a fast agent stops at the first blocked cell instead of jumping over it.
class GridWorld {
public:
    static constexpr int n_actions = 4;

    explicit GridWorld(GridWorldConfig cfg);

    void reset();
    StepOutcome step(int action);

    int state() const { return pos_.second * cfg_.width + pos_.first; }
    int n_states() const { return cfg_.width * cfg_.height; }
    std::pair<int, int> position() const { return pos_; }
    bool in_bounds(int x, int y) const;
    bool blocked(int x, int y) const;
    const GridWorldConfig& config() const { return cfg_; }

private:
    GridWorldConfig cfg_;
    std::pair<int, int> pos_;
    double carry_ = 0.0;
};

}  // namespace cogspike

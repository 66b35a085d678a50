#include "cogspike/autonomous/gridworld.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace cogspike {
namespace {

bool contains(const std::vector<std::pair<int, int>>& cells, std::pair<int, int> p) {
    return std::find(cells.begin(), cells.end(), p) != cells.end();
}

}  // namespace

GridWorld::GridWorld(GridWorldConfig cfg) : cfg_(std::move(cfg)), pos_(cfg_.start) {
    if (cfg_.width < 1 || cfg_.height < 1)
        throw std::invalid_argument("GridWorld: grid must be at least 1x1");
    if (!(cfg_.speed >= 1.0)) throw std::invalid_argument("GridWorld: speed must be >= 1");
    auto check_bounds = [&](std::pair<int, int> p, const char* what) {
        if (!in_bounds(p.first, p.second))
            throw std::invalid_argument(std::string("GridWorld: ") + what + " out of bounds");
    };
    check_bounds(cfg_.start, "start");
    check_bounds(cfg_.goal, "goal");
    for (const auto& p : cfg_.obstacles) check_bounds(p, "obstacle");
    for (const auto& p : cfg_.hazards) check_bounds(p, "hazard");
    if (contains(cfg_.obstacles, cfg_.start) || contains(cfg_.hazards, cfg_.start))
        throw std::invalid_argument("GridWorld: start must be a free cell");
    if (contains(cfg_.obstacles, cfg_.goal) || contains(cfg_.hazards, cfg_.goal))
        throw std::invalid_argument("GridWorld: goal must be a free cell");
}

void GridWorld::reset() {
    pos_ = cfg_.start;
    carry_ = 0.0;
}

bool GridWorld::in_bounds(int x, int y) const {
    return x >= 0 && x < cfg_.width && y >= 0 && y < cfg_.height;
}

bool GridWorld::blocked(int x, int y) const {
    return !in_bounds(x, y) || contains(cfg_.obstacles, {x, y});
}

StepOutcome GridWorld::step(int action) {
    if (action < 0 || action >= n_actions)
        throw std::invalid_argument("GridWorld: action out of range");
    static constexpr int dx[] = {1, 0, -1, 0};
    static constexpr int dy[] = {0, 1, 0, -1};
    StepOutcome out;
    out.reward = cfg_.step_reward;
    carry_ += cfg_.speed;
    int cells = static_cast<int>(carry_);
    carry_ -= cells;
    for (; cells > 0; --cells) {
        const int nx = pos_.first + dx[action];
        const int ny = pos_.second + dy[action];
        if (blocked(nx, ny)) {
            out.reward += cfg_.collision_penalty;
            out.collided = true;
            carry_ = 0.0;  // the blocked move absorbs the rest of this action's motion
            break;
        }
        pos_ = {nx, ny};
        if (pos_ == cfg_.goal) {
            out.reward += cfg_.goal_reward;
            out.reached_goal = true;
            out.done = true;
            break;
        }
        if (contains(cfg_.hazards, pos_)) {
            out.reward += cfg_.hazard_penalty;
            out.hit_hazard = true;
            out.done = true;
            break;
        }
    }
    return out;
}

}  // namespace cogspike

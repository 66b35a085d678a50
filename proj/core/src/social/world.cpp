#include "cogspike/social/world.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cogspike {

namespace {

constexpr double kPi = 3.14159265358979323846;

// True when the open segment between the two cell centers passes through the
// interior of an occluder cell (endpoints' own cells excluded). Integer walk:
// the segment crosses column boundaries at t = (2k-1)/(2|dx|) and row
// boundaries at t = (2m-1)/(2|dy|); equal crossing times mean the segment
// hits a lattice corner exactly, where it steps diagonally without entering
// the two cells it merely grazes.
bool sight_blocked(const WorldState& w, std::pair<int, int> from, std::pair<int, int> to) {
    const int ax = std::abs(to.first - from.first);
    const int ay = std::abs(to.second - from.second);
    const int sx = to.first > from.first ? 1 : -1;
    const int sy = to.second > from.second ? 1 : -1;
    int cx = from.first;
    int cy = from.second;
    int kx = 1;
    int ky = 1;
    while (cx != to.first || cy != to.second) {
        const bool has_v = kx <= ax;
        const bool has_h = ky <= ay;
        if (has_v && has_h) {
            const long long tv = static_cast<long long>(2 * kx - 1) * ay;
            const long long th = static_cast<long long>(2 * ky - 1) * ax;
            if (tv < th) {
                cx += sx;
                ++kx;
            } else if (th < tv) {
                cy += sy;
                ++ky;
            } else {
                cx += sx;
                cy += sy;
                ++kx;
                ++ky;
            }
        } else if (has_v) {
            cx += sx;
            ++kx;
        } else {
            cy += sy;
            ++ky;
        }
        if ((cx != to.first || cy != to.second) && w.occluded_at(cx, cy)) return true;
    }
    return false;
}

bool in_cone(const AgentPose& viewer, int tx, int ty) {
    const double dx = tx - viewer.position.first;
    const double dy = ty - viewer.position.second;
    if (dx == 0.0 && dy == 0.0) return true;
    const double rad = viewer.facing_deg * kPi / 180.0;
    const double along = (dx * std::cos(rad) + dy * std::sin(rad)) / std::hypot(dx, dy);
    return along >= std::cos(viewer.fov_deg * kPi / 180.0) - 1e-9;
}

}  // namespace

void AgentPose::validate() const {
    if (!std::isfinite(facing_deg)) throw std::invalid_argument("AgentPose: facing must be finite");
    if (!(fov_deg > 0.0) || fov_deg > 180.0)
        throw std::invalid_argument("AgentPose: fov half-angle must be in (0, 180]");
}

bool WorldState::occluded_at(int x, int y) const {
    return std::find(occluders.begin(), occluders.end(), std::pair{x, y}) != occluders.end();
}

void WorldState::validate() const {
    if (width < 1 || height < 1) throw std::invalid_argument("WorldState: grid must be at least 1x1");
    for (const auto& c : occluders)
        if (!in_bounds(c.first, c.second))
            throw std::invalid_argument("WorldState: occluder off the grid");
    for (const auto& [name, c] : objects)
        if (!in_bounds(c.first, c.second))
            throw std::invalid_argument("WorldState: object '" + name + "' off the grid");
    for (const auto& c : hazards)
        if (!in_bounds(c.first, c.second))
            throw std::invalid_argument("WorldState: hazard off the grid");
    for (const auto& a : agents) {
        a.validate();
        if (!in_bounds(a.position.first, a.position.second))
            throw std::invalid_argument("WorldState: agent off the grid");
    }
}

Percept perspective_transform(const WorldState& world, const AgentPose& viewer) {
    world.validate();
    viewer.validate();
    if (!world.in_bounds(viewer.position.first, viewer.position.second))
        throw std::invalid_argument("perspective_transform: viewer off the grid");

    Percept p;
    p.width = world.width;
    p.height = world.height;
    p.visible.assign(static_cast<std::size_t>(world.width) * static_cast<std::size_t>(world.height),
                     0);
    if (!viewer.present) return p;

    for (int y = 0; y < world.height; ++y)
        for (int x = 0; x < world.width; ++x)
            if (in_cone(viewer, x, y) && !sight_blocked(world, viewer.position, {x, y}))
                p.visible[static_cast<std::size_t>(y) * static_cast<std::size_t>(world.width) +
                          static_cast<std::size_t>(x)] = 1;

    for (const auto& [name, cell] : world.objects)
        if (p.sees(cell)) p.objects.emplace(name, cell);
    for (const auto& cell : world.hazards)
        if (p.sees(cell)) p.hazards.push_back(cell);
    for (std::size_t i = 0; i < world.agents.size(); ++i)
        if (world.agents[i].present && p.sees(world.agents[i].position)) p.agents.push_back(i);
    return p;
}

bool warn_of_hazard(const AgentPose& self, const AgentPose& other, const WorldState& world) {
    if (!self.present || !other.present)
        throw std::invalid_argument("warn_of_hazard: both agents must be present");
    const Percept mine = perspective_transform(world, self);
    const Percept theirs = perspective_transform(world, other);

    // planned path: straight ahead, snapped to the nearest of 8 directions
    const double rad = other.facing_deg * kPi / 180.0;
    const int dx = static_cast<int>(std::llround(std::cos(rad)));
    const int dy = static_cast<int>(std::llround(std::sin(rad)));
    if (dx == 0 && dy == 0) return false;

    for (int x = other.position.first + dx, y = other.position.second + dy; world.in_bounds(x, y);
         x += dx, y += dy)
        for (const auto& h : world.hazards)
            if (h == std::pair{x, y} && mine.sees(x, y) && !theirs.sees(x, y)) return true;
    return false;
}

}  // namespace cogspike

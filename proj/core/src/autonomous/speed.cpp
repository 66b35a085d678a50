#include "cogspike/autonomous/speed.hpp"

#include <algorithm>
#include <stdexcept>

namespace cogspike {
namespace {

struct Corridor {
    int start_x = 0;
    int wall_x = 0;
};

Corridor corridor_of(const GridWorld& env) {
    const auto& cfg = env.config();
    if (cfg.height != 1)
        throw std::invalid_argument("speed_generalization: environment must be a corridor");
    if (cfg.obstacles.empty())
        throw std::invalid_argument("speed_generalization: corridor needs a wall obstacle");
    Corridor c;
    c.start_x = cfg.start.first;
    c.wall_x = cfg.width;
    for (const auto& p : cfg.obstacles)
        if (p.first > c.start_x) c.wall_x = std::min(c.wall_x, p.first);
    if (c.wall_x >= cfg.width)
        throw std::invalid_argument("speed_generalization: no wall ahead of the start cell");
    return c;
}

// One approach down the corridor. The agent senses for tick_ms, turns away
// once the accumulated response crosses threshold, otherwise advances.
// Training approaches run with the turn disabled (pure pairing: every
// collision reinforces at the observed cue-to-collision interval); they
// still report whether the response would have crossed, which tracks how
// far conditioning has come.
bool run_approach(ConditioningCircuit& circuit, const GridWorld& proto, const Corridor& cor,
                  double speed, bool learn, const SpeedTaskConfig& cfg) {
    GridWorldConfig wcfg = proto.config();
    wcfg.speed = speed;
    GridWorld world(wcfg);
    world.reset();

    double accumulated_cr_ms = 0.0;
    int cue_ticks = 0;
    bool would_turn = false;
    while (true) {
        const double distance = cor.wall_x - world.position().first;
        if (distance <= cfg.cue_distance) {
            const double cr = circuit.trial({0}, false, cfg.tick_ms, false);
            ++cue_ticks;
            accumulated_cr_ms += cr * cfg.tick_ms;
            if (accumulated_cr_ms >= cfg.turn_threshold_cr_ms) {
                would_turn = true;
                if (!learn) return true;  // avoidance turn
            }
        }
        const StepOutcome out = world.step(0);
        if (out.collided) {
            if (learn) {
                if (cue_ticks > 0)
                    circuit.trial({0}, true, cue_ticks * cfg.tick_ms, true);
                else
                    circuit.trial({}, true, 0.0, true);  // unsignaled impact
            }
            return would_turn;
        }
    }
}

}  // namespace

SpeedResult speed_generalization(const GridWorld& env, double train_speed,
                                 const std::vector<double>& test_speeds, std::uint64_t seed,
                                 const SpeedTaskConfig& cfg) {
    if (!(train_speed >= 1.0))
        throw std::invalid_argument("speed_generalization: train speed must be >= 1");
    const Corridor cor = corridor_of(env);
    const double approach = cor.wall_x - cor.start_x;
    if (!(cfg.cue_distance < approach))
        throw std::invalid_argument("speed_generalization: cue zone must start after the start cell");
    auto check_speed = [&](double s) {
        if (!(s >= 1.0)) throw std::invalid_argument("speed_generalization: speed must be >= 1");
        if (s > approach)
            throw std::invalid_argument(
                "speed_generalization: speed would tunnel through the wall in one action");
    };
    check_speed(train_speed);
    for (double s : test_speeds) check_speed(s);

    ConditioningCircuit circuit(cfg.circuit, seed);

    SpeedResult result;
    int ready = 0;
    for (int ep = 0; ep < cfg.train_episodes; ++ep)
        if (run_approach(circuit, env, cor, train_speed, true, cfg)) ++ready;
    result.train_success =
        cfg.train_episodes > 0 ? static_cast<double>(ready) / cfg.train_episodes : 0.0;

    for (double s : test_speeds) {
        int ok = 0;
        for (int ep = 0; ep < cfg.eval_episodes; ++ep)
            if (run_approach(circuit, env, cor, s, false, cfg)) ++ok;
        result.per_speed.push_back(
            {s, cfg.eval_episodes > 0 ? static_cast<double>(ok) / cfg.eval_episodes : 0.0});
    }
    return result;
}

}  // namespace cogspike

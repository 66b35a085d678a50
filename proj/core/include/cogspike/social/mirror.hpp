#pragma once

#include <Eigen/Dense>
#include <utility>

#include "cogspike/snn/network.hpp"

namespace cogspike {

enum class Emotion { neutral = 0, positive = 1, distress = 2 };
inline constexpr int n_emotions = 3;

struct EmotionState {
    Emotion label = Emotion::neutral;
    double intensity = 0.0;  // population activity, 0..1
};

enum class Attribution { self, other };
enum class AltruisticChoice { continue_task, rescue };

struct MirrorConfig {
    int n_actions = 3;
    int neurons_per_group = 8;    // perception, mirror, and emotion group size
    int anti_mirror_neurons = 8;
    double window_ms = 50.0;
    double input_period_ms = 2.0;
    double drive_weight = 15.0;   // innate input pathways
    double hebbian_rate = 0.01;
    double w_max = 8.0;
    int silence_floor = 8;        // emotion group counts below this read as no emotion
};

// Motor cortex with mirror neurons (active both when acting and when watching
// the same action) and anti-mirror neurons (driven only by the proprioceptive
// copy of an own motor command). Self-experience episodes wire perception to
// the mirror groups and the mirror groups to the felt emotion, so watching a
// trained action later re-activates the matching emotion population; the
// anti-mirror group is what separates doing from watching.
class MirrorSystem {
public:
    explicit MirrorSystem(const MirrorConfig& cfg = {});

    // One episode of acting out `action` while feeling `felt`.
    void train_self_experience(int action, Emotion felt);

    // Watch an action; the proprioceptive copy is present only when the
    // action is the observer's own.
    std::pair<EmotionState, Attribution> observe(int action, bool proprioceptive_copy) const;

    bool trained() const { return episodes_ > 0; }
    int episodes() const { return episodes_; }
    const MirrorConfig& config() const { return cfg_; }

    // index ranges within the motor population
    std::pair<int, int> mirror_range() const { return {0, cfg_.n_actions * cfg_.neurons_per_group}; }
    std::pair<int, int> anti_mirror_range() const {
        const int lo = cfg_.n_actions * cfg_.neurons_per_group;
        return {lo, lo + cfg_.anti_mirror_neurons};
    }

    const Eigen::MatrixXd& perception_to_motor() const;
    const Eigen::MatrixXd& motor_to_emotion() const;

private:
    struct Counts;
    Counts run(int perception_action, int command_action, bool proprio, int felt) const;

    MirrorConfig cfg_;
    Network net_;
    std::uint32_t perception_ = 0;
    std::uint32_t command_ = 0;
    std::uint32_t proprio_ = 0;
    std::uint32_t feel_ = 0;
    std::uint32_t motor_ = 0;
    std::uint32_t emotion_ = 0;
    std::uint32_t p2m_ = 0;
    std::uint32_t m2e_ = 0;
    int episodes_ = 0;
};

std::pair<EmotionState, Attribution> observe_action_empathy(const MirrorSystem& mirror,
                                                            int observed_action,
                                                            bool proprioceptive_copy);

// Rescue wins exactly when felt empathy for the other's negative state
// outweighs the task at hand.
AltruisticChoice decide_altruistic(double own_task_value, const EmotionState& other_emotion,
                                   double empathy_gain);

}  // namespace cogspike

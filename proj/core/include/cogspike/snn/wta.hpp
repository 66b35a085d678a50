#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "cogspike/rng.hpp"

namespace cogspike {

enum class TieRule { lowest_index, random };

// Winner-take-all readout over per-unit activity (spike counts or rates).
// Ties go to the lowest index unless a seeded Rng is supplied with the
// random rule.
template <typename T>
std::size_t wta_select(const std::vector<T>& activities, TieRule tie = TieRule::lowest_index,
                       Rng* rng = nullptr) {
    if (activities.empty()) throw std::invalid_argument("wta_select: empty activity vector");
    T best = activities[0];
    std::vector<std::size_t> winners{0};
    for (std::size_t i = 1; i < activities.size(); ++i) {
        if (activities[i] > best) {
            best = activities[i];
            winners.assign(1, i);
        } else if (activities[i] == best) {
            winners.push_back(i);
        }
    }
    if (winners.size() == 1 || tie == TieRule::lowest_index) return winners.front();
    if (!rng) throw std::invalid_argument("wta_select: random tie rule needs an rng");
    return winners[rng->uniform_int(winners.size())];
}

}  // namespace cogspike

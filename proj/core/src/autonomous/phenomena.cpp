#include <algorithm>
#include <stdexcept>

#include "cogspike/autonomous/conditioning.hpp"

namespace cogspike {

namespace {

constexpr double kInterval = 150.0;
constexpr double kCriterion = 0.8;

// trials until CR first reaches the criterion, or max_trials if never
int train_to_criterion(ConditioningCircuit& c, const std::vector<int>& channels, int max_trials,
                       std::vector<double>* trace) {
    for (int t = 0; t < max_trials; ++t) {
        const double cr = c.trial(channels, true, kInterval);
        if (trace) trace->push_back(cr);
        if (cr >= kCriterion) return t + 1;
    }
    return max_trials;
}

PhenomenonResult acquisition(const ConditioningConfig& cfg, std::uint64_t seed) {
    PhenomenonResult res;
    res.name = "acquisition";
    ConditioningCircuit c(cfg, seed);
    const double naive = c.trial({0}, false, kInterval, false);
    for (int t = 0; t < 50; ++t) res.cr_trace.push_back(c.trial({0}, true, kInterval));

    // moving average over 5 trials must never fall more than noise tolerance
    bool monotone = true;
    double prev = 0.0;
    for (std::size_t i = 4; i < res.cr_trace.size(); ++i) {
        double ma = 0.0;
        for (std::size_t k = i - 4; k <= i; ++k) ma += res.cr_trace[k];
        ma /= 5.0;
        if (ma < prev - 0.1) monotone = false;
        prev = std::max(prev, ma);
    }
    const double final_cr =
        *std::max_element(res.cr_trace.end() - 5, res.cr_trace.end());
    res.metrics["naive_cr"] = naive;
    res.metrics["final_cr"] = final_cr;
    res.metrics["monotone"] = monotone ? 1.0 : 0.0;
    res.passed = naive < 0.1 && final_cr >= kCriterion && monotone;
    return res;
}

PhenomenonResult extinction(const ConditioningConfig& cfg, std::uint64_t seed) {
    PhenomenonResult res;
    res.name = "extinction";
    ConditioningCircuit c(cfg, seed);
    train_to_criterion(c, {0}, 50, nullptr);
    int reached = -1;
    for (int t = 0; t < 50; ++t) {
        const double cr = c.trial({0}, false, kInterval);
        res.cr_trace.push_back(cr);
        if (reached < 0 && cr <= 0.2) reached = t + 1;
    }
    res.metrics["trials_to_extinction"] = reached;
    res.metrics["final_cr"] = res.cr_trace.back();
    res.passed = reached > 0 && res.cr_trace.back() <= 0.2;
    return res;
}

PhenomenonResult reacquisition(const ConditioningConfig& cfg, std::uint64_t seed) {
    PhenomenonResult res;
    res.name = "reacquisition-savings";
    ConditioningCircuit c(cfg, seed);
    const int first = train_to_criterion(c, {0}, 50, &res.cr_trace);
    for (int t = 0; t < 50; ++t)
        if (c.trial({0}, false, kInterval) <= 0.2) break;
    const int second = train_to_criterion(c, {0}, 50, &res.cr_trace);
    res.metrics["acquisition_trials"] = first;
    res.metrics["reacquisition_trials"] = second;
    res.passed = first < 50 && second * 2 <= first;
    return res;
}

PhenomenonResult spontaneous_recovery(const ConditioningConfig& cfg, std::uint64_t seed) {
    PhenomenonResult res;
    res.name = "spontaneous-recovery";
    ConditioningCircuit c(cfg, seed);
    train_to_criterion(c, {0}, 50, nullptr);
    for (int t = 0; t < 30; ++t) res.cr_trace.push_back(c.trial({0}, false, kInterval));
    const double extinguished = res.cr_trace.back();
    c.rest(24.0);
    const double recovered = c.trial({0}, false, kInterval, false);
    res.cr_trace.push_back(recovered);
    res.metrics["extinguished_cr"] = extinguished;
    res.metrics["recovered_cr"] = recovered;
    res.passed = extinguished <= 0.2 && recovered >= 0.2;
    return res;
}

PhenomenonResult blocking(const ConditioningConfig& cfg, std::uint64_t seed) {
    PhenomenonResult res;
    res.name = "blocking";
    ConditioningCircuit c(cfg, seed);
    for (int t = 0; t < 30; ++t) c.trial({0}, true, kInterval);       // A alone
    for (int t = 0; t < 20; ++t) res.cr_trace.push_back(c.trial({0, 1}, true, kInterval));
    const double blocked = c.trial({1}, false, kInterval, false);

    ConditioningCircuit control(cfg, seed + 1);
    for (int t = 0; t < 20; ++t) control.trial({1}, true, kInterval);  // B alone, no pretraining
    const double unblocked = control.trial({1}, false, kInterval, false);

    res.metrics["blocked_cr"] = blocked;
    res.metrics["unblocked_cr"] = unblocked;
    res.passed = blocked <= 0.3 && unblocked >= kCriterion;
    return res;
}

PhenomenonResult conditioned_inhibition(const ConditioningConfig& cfg, std::uint64_t seed) {
    PhenomenonResult res;
    res.name = "conditioned-inhibition";
    ConditioningCircuit c(cfg, seed);
    for (int t = 0; t < 30; ++t) c.trial({0}, true, kInterval);  // establish A first
    for (int t = 0; t < 30; ++t) {
        c.trial({0}, true, kInterval);                           // A reinforced
        res.cr_trace.push_back(c.trial({0, 2}, false, kInterval));  // AX never reinforced
    }
    const double cr_a = c.trial({0}, false, kInterval, false);
    const double cr_ax = c.trial({0, 2}, false, kInterval, false);  // summation test
    res.metrics["cr_a"] = cr_a;
    res.metrics["cr_ax"] = cr_ax;
    res.passed = cr_a >= kCriterion && cr_ax <= 0.3;
    return res;
}

}  // namespace

std::vector<std::string> phenomenon_names() {
    return {"acquisition",          "extinction", "reacquisition-savings",
            "spontaneous-recovery", "blocking",   "conditioned-inhibition"};
}

PhenomenonResult run_phenomenon(const std::string& name, const ConditioningConfig& cfg,
                                std::uint64_t seed) {
    if (name == "acquisition") return acquisition(cfg, seed);
    if (name == "extinction") return extinction(cfg, seed);
    if (name == "reacquisition-savings") return reacquisition(cfg, seed);
    if (name == "spontaneous-recovery") return spontaneous_recovery(cfg, seed);
    if (name == "blocking") return blocking(cfg, seed);
    if (name == "conditioned-inhibition") return conditioned_inhibition(cfg, seed);
    throw std::invalid_argument("unknown phenomenon: " + name);
}

}  // namespace cogspike

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace cogspike {

struct ExperimentConfig {
    std::string experiment;
    std::uint64_t seed = 0;
    std::map<std::string, double> overrides;
    std::string out_dir;  // empty: nothing written to disk
    int threads = 0;      // worker pool size, 0 = one per core; not hashed

    double get(const std::string& key, double fallback) const;
    int get_int(const std::string& key, int fallback) const;
};

struct CheckResult {
    std::string name;
    bool passed = false;
    double value = 0.0;
    double threshold = 0.0;
    std::string relation;  // how value compares against threshold
};

struct TimeSeries {
    std::string name;  // also the CSV file stem
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

struct RunResult {
    std::string experiment;
    std::string config_hash;
    std::map<std::string, double> metrics;
    std::vector<CheckResult> checks;
    std::vector<TimeSeries> series;
    double wall_clock_ms = 0.0;  // measured; never part of the summary

    bool passed() const;
};

struct ExperimentInfo {
    std::string name;
    std::string description;
    int level = 0;  // self-hierarchy level the experiment exercises
};

std::string level_tag(int level);   // "L0".."L3"
std::string level_name(int level);  // "perception & learning", "bodily self", ...

// Registered experiments in alphabetical order.
std::vector<ExperimentInfo> list_experiments();

// FNV-1a over the canonical (sorted-key) JSON of experiment, seed and
// overrides; output directory and thread count do not affect it.
std::string config_hash(const ExperimentConfig& cfg);

// Runs the named experiment deterministically for the seed. Unknown names
// raise an error listing the registry; unknown override keys raise an error
// naming the key. With out_dir set, writes summary.json plus one CSV per
// series into it.
RunResult run_experiment(const ExperimentConfig& cfg);

// Stable-order JSON summary (schema in docs/formats.md); excludes wall-clock
// time so reruns are byte-identical.
std::string summary_json(const RunResult& result, const ExperimentConfig& cfg);
std::string series_csv(const TimeSeries& series);

// Gathers every summary.json directly in run_dir or one level below it into
// export.json or export.csv (sorted, re-export gives identical bytes).
// Returns the path of the written file.
std::string export_results(const std::string& run_dir, const std::string& format);

}  // namespace cogspike

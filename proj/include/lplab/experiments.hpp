// Built-in experiments: each one tests a named claim about the square
// functions and best constants, produces verdicts plus CSV/JSON artifacts,
// and is fully deterministic given the seed.
#pragma once

#include "lplab/estimate.hpp"

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace lplab {

struct ExperimentParams {
    unsigned long long seed = 0x1f2e3d4c5b6a7988ull;
    std::map<std::string, double> overrides;  // named tolerance/size knobs

    double get(const std::string& key, double fallback) const {
        auto it = overrides.find(key);
        return it == overrides.end() ? fallback : it->second;
    }
};

struct ExperimentResult {
    std::string name;
    bool pass = false;
    std::string detail;
    std::vector<Verdict> verdicts;
    std::vector<std::pair<std::string, std::string>> artifacts;  // filename -> body
};

struct ExperimentInfo {
    std::string name;
    std::string claim;
    bool in_smoke = false;
    ExperimentResult (*fn)(const ExperimentParams&);
};

const std::vector<ExperimentInfo>& experiment_catalog();
const ExperimentInfo* find_experiment(const std::string& name);
ExperimentResult run_experiment(const std::string& name, const ExperimentParams& params);

// Runs the smoke subset twice and reports whether every artifact byte matches.
ExperimentResult determinism_check(const ExperimentParams& params);

// Flat key = value configuration; '#' starts a comment; unknown keys are
// rejected.  Recognized keys: experiment (name list, "all" or "smoke"),
// seed, output_dir, N, L, d, t_min, t_max, nodes, and override.<knob>.
struct ExperimentConfig {
    std::vector<std::string> experiments;
    ExperimentParams params;
    std::string output_dir = "lplab-out";
};

ExperimentConfig parse_config(std::istream& in);

}  // namespace lplab

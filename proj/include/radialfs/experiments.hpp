#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "radialfs/config.hpp"

namespace radialfs {

// Threshold provenance tags used in summaries.
inline constexpr const char* kPaperExponent = "paper exponent";
inline constexpr const char* kFrozenBaseline = "frozen baseline";
inline constexpr const char* kExactIdentity = "exact identity";
inline constexpr const char* kAcceptanceBound = "acceptance bound";
inline constexpr const char* kPaperExample = "paper example";
inline constexpr const char* kAnalyticBound = "analytic bound";

struct Assertion {
    std::string name;
    double measured = 0;
    std::string threshold;  // human readable, e.g. "|x - 0.5| <= 0.1"
    std::string provenance;
    bool pass = false;
};

Assertion assert_close(std::string name, double measured, double target, double tol, std::string provenance);
Assertion assert_at_most(std::string name, double measured, double bound, std::string provenance);
Assertion assert_at_least(std::string name, double measured, double bound, std::string provenance);
Assertion assert_true(std::string name, bool ok, std::string provenance);

struct ExperimentResult {
    std::string experiment;
    std::string config;  // canonical rendering of the config that ran
    std::vector<Assertion> assertions;
    std::vector<std::pair<std::string, std::string>> artifacts;  // file name, content
    std::vector<std::string> notes;
    bool all_pass() const;
    std::string summary() const;
};

struct RunOptions {
    bool parallel = false;
    unsigned threads = 0;  // 0: hardware concurrency
};

struct ExperimentInfo {
    std::string name;
    std::string doc;
    bool randomized = false;
    std::string default_config;
};

const std::vector<ExperimentInfo>& list_experiments();
const ExperimentInfo& find_experiment(const std::string& name);

// Runs the named experiment. Unknown experiment, bad or unused keys, a missing seed for a
// randomized experiment: ConfigError. Numerical failures inside the run propagate as Error.
ExperimentResult run_experiment(const ExperimentConfig& cfg, const RunOptions& opt = {});

// writes the artifacts and summary.txt into dir, creating it
void write_artifacts(const ExperimentResult& result, const std::string& dir);

// f(0..n-1); results land in index order whatever the scheduling
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& f, const RunOptions& opt);

// %.17g
std::string fmt(double v);

}  // namespace radialfs

// Runs the default configuration of each acceptance experiment and prints one line per criterion.
//   acceptance [--out DIR] [--only N]
// Exit status 0 when every criterion passes, 1 otherwise, 2 on a runtime error.
#include <chrono>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "radialfs/config.hpp"
#include "radialfs/experiments.hpp"

namespace {

struct Criterion {
    int id;
    const char* title;
    const char* experiment;
    double time_limit;  // seconds
};

const std::vector<Criterion> kCriteria = {
    {1, "f_{j,lambda} Besov norm scaling", "scaling-f-j-lambda", 120},
    {2, "f_{j,lambda} weighted L_p scaling", "lp-scaling", 30},
    {3, "decay at infinity, lower-bound band", "decay-infinity", 120},
    {4, "Strauss decay exponent", "strauss", 60},
    {5, "blow-up exponent at the origin", "blowup-origin", 30},
    {6, "log-borderline ratio", "log-borderline", 30},
    {7, "radial BV decay", "bv-decay", 10},
    {8, "BV trace equivalence", "bv-equivalence", 10},
    {9, "sequence-space identities", "seq-identities", 10},
    {10, "trace/extension round trips", "trace-roundtrip", 10},
    {11, "support-shift norm law", "support-shift", 60},
    {12, "spherical-mean wavelet boundedness", "spherical-mean-wavelet", 180},
    {13, "Sobolev radial reduction", "sobolev-reduction", 60},
    {14, "predicate tables", "predicate-tables", 1},
};

}  // namespace

int main(int argc, char** argv) {
    std::string out_dir;
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (!std::strcmp(argv[i], "--out") && i + 1 < argc)
            out_dir = argv[++i];
        else if (!std::strcmp(argv[i], "--only") && i + 1 < argc)
            only = std::atoi(argv[++i]);
        else {
            std::fprintf(stderr, "usage: acceptance [--out DIR] [--only N]\n");
            return 2;
        }
    }
    int failed = 0, errors = 0;
    double total = 0;
    for (const auto& c : kCriteria) {
        if (only && c.id != only) continue;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            const auto cfg = radialfs::ExperimentConfig::parse(radialfs::find_experiment(c.experiment).default_config);
            const auto res = radialfs::run_experiment(cfg);
            const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            total += secs;
            if (!out_dir.empty()) radialfs::write_artifacts(res, out_dir + "/" + c.experiment);
            std::size_t passed = 0;
            std::string first_fail;
            for (const auto& a : res.assertions) {
                if (a.pass)
                    ++passed;
                else if (first_fail.empty())
                    first_fail = a.name + " = " + radialfs::fmt(a.measured) + " (" + a.threshold + ")";
            }
            const bool in_time = secs <= c.time_limit;
            const bool ok = res.all_pass() && in_time;
            failed += !ok;
            std::printf("%s criterion %2d  %-38s %zu/%zu assertions, %.2f s (limit %g s)", ok ? "PASS" : "FAIL", c.id,
                        c.title, passed, res.assertions.size(), secs, c.time_limit);
            if (!first_fail.empty()) std::printf("  first failure: %s", first_fail.c_str());
            if (!in_time) std::printf("  over the time limit");
            std::printf("\n");
        } catch (const std::exception& e) {
            ++errors;
            std::printf("FAIL criterion %2d  %-38s error: %s\n", c.id, c.title, e.what());
        }
        std::fflush(stdout);
    }
    std::printf("total %.1f s (suite limit 900 s); %d failed, %d errors\n", total, failed, errors);
    if (errors) return 2;
    return (failed || total > 900) ? 1 : 0;
}

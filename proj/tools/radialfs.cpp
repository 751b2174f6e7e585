// radialfs: experiment runner.
//   radialfs run <config> [--out DIR] [--parallel] [--threads N]
//   radialfs list
//   radialfs map --region=NAME --rect=a,b,c,d --res=N [--d=2] [--q=2] [--scale=B]
//   radialfs config <experiment>       print the default config
// Exit codes: 0 all assertions pass, 1 an assertion failed, 2 config or runtime error.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "radialfs/config.hpp"
#include "radialfs/errors.hpp"
#include "radialfs/experiments.hpp"
#include "radialfs/spaces.hpp"

namespace {

constexpr int kPass = 0, kAssertFail = 1, kError = 2;

std::vector<double> parse_rect(const std::string& text) {
    std::vector<double> v;
    std::size_t a = 0;
    while (a <= text.size()) {
        auto b = text.find(',', a);
        if (b == std::string::npos) b = text.size();
        v.push_back(radialfs::parse_number(text.substr(a, b - a)));
        a = b + 1;
    }
    if (v.size() != 4 || !(v[0] < v[1]) || !(v[2] < v[3]))
        throw radialfs::ConfigError("--rect needs a,b,c,d with a < b and c < d", 0, "rect");
    return v;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Radial function space experiments"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "run the experiment described by a config file");
    std::string config_path, out_dir;
    bool parallel = false, quiet = false;
    unsigned threads = 0;
    run->add_option("config", config_path, "config file (key = value with [sections], or JSON)")->required();
    run->add_option("--out", out_dir, "output directory (default: config 'output' or radialfs-out/<experiment>)");
    run->add_flag("--parallel", parallel, "witness-level parallelism, results merged in index order");
    run->add_option("--threads", threads, "worker threads for --parallel (default: all cores)");
    run->add_flag("-q,--quiet", quiet, "print only the result line");

    auto* list = app.add_subcommand("list", "list experiments");

    auto* map = app.add_subcommand("map", "rasterize a parameter region over a (1/p, s) rectangle as CSV");
    std::string region, rect, map_out, scale = "B";
    std::string q_text = "2";
    int res = 41, d = 2;
    map->add_option("--region", region, "region name")->required();
    map->add_option("--rect", rect, "a,b,c,d: 1/p in [a,b], s in [c,d]")->required();
    map->add_option("--res", res, "cells per side")->default_val(41);
    map->add_option("--d", d, "dimension")->default_val(2);
    map->add_option("--q", q_text, "fine index, inf allowed")->default_val("2");
    map->add_option("--scale", scale, "B or F")->default_val("B");
    map->add_option("--out", map_out, "write to a file instead of stdout");

    auto* show = app.add_subcommand("config", "print the default config of an experiment");
    std::string show_name;
    show->add_option("experiment", show_name)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kError;
    }

    try {
        if (*list) {
            std::size_t width = 0;
            for (auto& e : radialfs::list_experiments()) width = std::max(width, e.name.size());
            for (auto& e : radialfs::list_experiments())
                std::printf("%-*s  %s%s\n", static_cast<int>(width), e.name.c_str(), e.doc.c_str(),
                            e.randomized ? " [seeded]" : "");
            return kPass;
        }
        if (*show) {
            std::fputs(radialfs::find_experiment(show_name).default_config.c_str(), stdout);
            return kPass;
        }
        if (*map) {
            const auto r = parse_rect(rect);
            if (res < 2) throw radialfs::ConfigError("--res must be >= 2", 0, "res");
            if (scale != "B" && scale != "F") throw radialfs::ConfigError("--scale must be B or F", 0, "scale");
            const double q = radialfs::parse_number(q_text);
            const auto cells = radialfs::classification_map(radialfs::make_region(region), r[0], r[1], r[2], r[3], res,
                                                            d, q, scale == "B" ? radialfs::Scale::B : radialfs::Scale::F);
            const auto csv = radialfs::raster_csv(cells);
            if (map_out.empty()) {
                std::fputs(csv.c_str(), stdout);
            } else {
                std::ofstream f(map_out);
                if (!f) throw radialfs::Error("cannot write " + map_out);
                f << csv;
            }
            return kPass;
        }
        auto cfg = radialfs::ExperimentConfig::load(config_path);
        cfg.apply_seed_override();
        radialfs::RunOptions opt;
        opt.parallel = parallel;
        opt.threads = threads;
        const auto result = radialfs::run_experiment(cfg, opt);
        std::string dir = out_dir;
        if (dir.empty()) dir = cfg.output_dir();
        if (dir.empty()) dir = "radialfs-out/" + cfg.experiment();
        radialfs::write_artifacts(result, dir);
        if (quiet) {
            std::printf("%s: %s\n", result.experiment.c_str(), result.all_pass() ? "PASS" : "FAIL");
        } else {
            std::fputs(result.summary().c_str(), stdout);
            std::printf("artifacts: %s\n", dir.c_str());
        }
        return result.all_pass() ? kPass : kAssertFail;
    } catch (const radialfs::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kError;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kError;
    }
}

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "radialfs/spaces.hpp"

namespace radialfs {

// Experiment configuration: "key = value" lines grouped under [section] headers,
// '#' starts a comment. A document whose first non-blank character is '{' is read as JSON
// (nested objects become sections, arrays become lists).
// Keys are addressed as "section.key"; keys before the first header have no prefix.
class ExperimentConfig {
  public:
    struct Entry {
        std::string value;
        int line = 0;
        mutable bool used = false;
    };

    static ExperimentConfig parse(std::string_view text);
    static ExperimentConfig load(const std::string& path);

    const std::string& experiment() const { return experiment_; }
    std::optional<std::uint64_t> seed() const { return seed_; }
    void set_seed(std::uint64_t s) { seed_ = s; }
    // RADIALFS_SEED, when set, replaces the seed; a malformed value is a ConfigError
    void apply_seed_override();
    // ConfigError naming the seed field when no seed is present
    std::uint64_t require_seed() const;
    const std::string& output_dir() const { return output_; }
    void set_output_dir(std::string dir) { output_ = std::move(dir); }

    bool has(const std::string& key) const { return entries_.count(key) > 0; }
    int line_of(const std::string& key) const;
    // override or add a key (line 0)
    void set(const std::string& key, std::string value);

    std::string str(const std::string& key) const;
    std::string str(const std::string& key, const std::string& fallback) const;
    double num(const std::string& key) const;
    double num(const std::string& key, double fallback) const;
    int integer(const std::string& key) const;
    int integer(const std::string& key, int fallback) const;
    bool flag(const std::string& key, bool fallback) const;
    // "3..8" or "3,4,5"; never empty
    std::vector<int> ints(const std::string& key) const;
    std::vector<int> ints(const std::string& key, std::vector<int> fallback) const;
    // comma separated numbers, "inf" and "a/b" accepted; never empty
    std::vector<double> nums(const std::string& key) const;
    std::vector<double> nums(const std::string& key, std::vector<double> fallback) const;
    // ';' separated strings (descriptors contain commas); never empty
    std::vector<std::string> strings(const std::string& key) const;
    std::vector<std::string> strings(const std::string& key, std::vector<std::string> fallback) const;
    // keys s, p, q, d, scale under the section; absent keys keep the fallback values
    SpaceParams params(const std::string& section, SpaceParams fallback) const;

    // ConfigError for the first key no experiment asked for
    void reject_unused() const;
    // canonical key = value rendering, sorted within sections
    std::string render() const;

  private:
    const Entry* find(const std::string& key) const;
    const Entry& need(const std::string& key) const;

    std::map<std::string, Entry> entries_;
    std::string experiment_;
    std::optional<std::uint64_t> seed_;
    int seed_line_ = 0;
    std::string output_;
};

// number parsing shared by the CLI: decimal, "inf", "-inf" or "a/b"
double parse_number(std::string_view text);

}  // namespace radialfs

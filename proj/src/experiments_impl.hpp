#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "radialfs/experiments.hpp"

namespace radialfs::detail {

struct Ctx {
    const ExperimentConfig& cfg;
    const RunOptions& opt;
    ExperimentResult& out;

    void check(Assertion a) { out.assertions.push_back(std::move(a)); }
    void note(std::string s) { out.notes.push_back(std::move(s)); }
    void artifact(std::string name, std::string content) { out.artifacts.emplace_back(std::move(name), std::move(content)); }
};

class Csv {
  public:
    explicit Csv(const std::string& header) : text_(header + "\n") {}
    template <class... T>
    void row(const T&... cells) {
        bool first = true;
        ((text_ += (first ? "" : ","), text_ += cell(cells), first = false), ...);
        text_ += "\n";
    }
    const std::string& str() const { return text_; }

  private:
    static std::string cell(double v) { return fmt(v); }
    static std::string cell(int v) { return std::to_string(v); }
    static std::string cell(long v) { return std::to_string(v); }
    static std::string cell(unsigned long v) { return std::to_string(v); }
    static std::string cell(bool v) { return v ? "1" : "0"; }
    static std::string cell(const std::string& s) {
        if (s.find_first_of(",\"") == std::string::npos) return s;
        std::string q = "\"";
        for (char c : s) q += (c == '"') ? std::string("\"\"") : std::string(1, c);
        return q + "\"";
    }
    static std::string cell(const char* s) { return cell(std::string(s)); }
    std::string text_;
};

// independent stream seed for item i of a seeded corpus (splitmix64 finalizer)
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t i) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (i + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

void run_scaling_f_j_lambda(Ctx& c);
void run_lp_scaling(Ctx& c);
void run_decay_infinity(Ctx& c);
void run_strauss(Ctx& c);
void run_blowup_origin(Ctx& c);
void run_log_borderline(Ctx& c);
void run_bv_decay(Ctx& c);
void run_bv_equivalence(Ctx& c);
void run_seq_identities(Ctx& c);
void run_trace_roundtrip(Ctx& c);
void run_support_shift(Ctx& c);
void run_spherical_mean_wavelet(Ctx& c);
void run_sobolev_reduction(Ctx& c);
void run_predicate_tables(Ctx& c);
void run_classification_map(Ctx& c);
void run_decompose(Ctx& c);

}  // namespace radialfs::detail

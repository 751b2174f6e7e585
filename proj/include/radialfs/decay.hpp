#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "radialfs/covering.hpp"
#include "radialfs/profile.hpp"
#include "radialfs/spaces.hpp"
#include "radialfs/test_functions.hpp"

namespace radialfs {

struct LinearFit {
    double slope = 0, intercept = 0, rms = 0;
    std::size_t n = 0;
};
// ordinary least squares y = slope * x + intercept
LinearFit least_squares(const std::vector<double>& x, const std::vector<double>& y);

struct DecayFit {
    std::vector<double> radii;
    std::vector<double> amplitudes;  // sup |f| over grid nodes with R <= |t| <= 2R
    double exponent = 0;             // slope of log amplitude vs log R
    double residual = 0;             // regression RMS in natural log units
};
// needs >= 4 increasing radii with nonzero amplitude, else UndefinedFit
DecayFit fit_decay_exponent(const RadialProfile& f, const std::vector<double>& R_list);

// Norm used to normalize witnesses: the weighted Littlewood-Paley norm or the atomic surrogate.
enum class Surrogate { LittlewoodPaley, Atomic };
Surrogate parse_surrogate(const std::string& name);
double surrogate_norm(const RadialProfile& g, const SpaceParams& params, Surrogate kind = Surrogate::LittlewoodPaley);

struct RatioRow {
    std::string witness;
    double radius = 0;
    double value = 0;  // weighted pointwise quantity before normalization
    double norm = 0;
    double ratio = 0;  // value / norm
};

struct DecayReport {
    std::string check;
    SpaceParams params;
    std::vector<RatioRow> rows;
    double max_ratio = 0, min_ratio = 0;
    double band() const { return min_ratio > 0 ? max_ratio / min_ratio : INFINITY; }
    std::string to_csv() const;  // witness,radius,value,norm,ratio
};

// seeded random sums of thin bumps on annuli in [1, rmax], sampled on the grid
std::vector<RadialProfile> bump_train_corpus(std::uint64_t seed, int count, int d, const Grid1D& grid, double rmax);

struct DecayOptions {
    Surrogate surrogate = Surrogate::LittlewoodPaley;
    double h = 1.0 / 64;  // grid spacing for generated witnesses, in units of the witness scale
};

// (i): sup_{|t|>=1} |t|^{(d-1)/p} |g(t)| / norm over the witnesses
DecayReport check_decay4_upper(const SpaceParams& params, const std::vector<RadialProfile>& witnesses,
                               const DecayOptions& opt = {});
// (iii): 2^{-r(d-1)/p} f_{1,lambda} with (1+lambda)/2 = 2^r; value at |x| = 2^r is |x|^{-(d-1)/p}
DecayReport check_decay4_lower(const SpaceParams& params, const std::vector<int>& r_list, const DecayOptions& opt = {});
struct Decay4Report {
    DecayReport upper, lower;
};
Decay4Report check_decay4(const SpaceParams& params, const std::vector<RadialProfile>& witnesses,
                          const std::vector<int>& r_list = {2, 3, 4, 5, 6, 7, 8}, const DecayOptions& opt = {});

// (iv) outside U: sums of translated singular bumps; sup near the singular radii grows under refinement
struct DivergenceReport {
    std::vector<double> spacings;
    std::vector<double> sups;
    bool diverging = false;  // sups strictly increasing as the spacing shrinks
};
DivergenceReport check_decay4_divergence(const SpaceParams& params, const std::vector<double>& spacings,
                                         int translates = 4);

struct Decay2Report {
    DecayReport upper;         // psi |x|^{s-d/p}: |x|^{d/p-s} |f| / norm on 0 < |x| <= 1
    DecayReport lower;         // 2^{-r(s-d/p)} f_{2+r,3} at |x| = 2^{-r}
    double witness_max = 0;    // max over 0 < |x| <= 1 of |x|^{d/p-s} |f(x)| / norm-free
    DecayFit origin_fit;       // on the blow-up witness, radii 2^{-r}
    double origin_exponent = 0;  // d/p - s measured
    double max_lower_identity_error = 0;  // |f(x) - |x|^{s-d/p}| at the lower-bound points
};
Decay2Report check_decay2(const SpaceParams& params, const std::vector<int>& r_list = {2, 3, 4, 5, 6, 7, 8, 9, 10},
                          const DecayOptions& opt = {});

struct Lim1Row {
    std::string witness;
    double radius;
    double ratio;  // (-log|x|)^{-1/q'} |f(x)|, unnormalized
};
struct Lim1Report {
    std::vector<Lim1Row> rows;
    std::vector<std::string> witnesses;
    std::vector<double> bands;      // max/min of ratio per witness
    std::vector<double> norms;      // surrogate norm per witness, empty if not computed
    std::string to_csv() const;
};
// s = d/p; radii 2^{-r}; witnesses given as family descriptors
Lim1Report check_lim1(const SpaceParams& params, const std::vector<std::string>& witnesses,
                      const std::vector<int>& r_list = {4, 5, 6, 7, 8, 9, 10, 11, 12}, bool with_norms = false);

// unit-H^1 bumps centered at 1.5 R for R = 2^r, summed; amplitude decay exponent should be (d-1)/2 for p = 2
struct StraussReport {
    DecayFit fit;
    std::vector<double> norms;  // first-order radial Sobolev norm of each bump before normalization
};
StraussReport strauss_bump_train(int d, double p, const std::vector<int>& r_list, double h = 1.0 / 64);

}  // namespace radialfs

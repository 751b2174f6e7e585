#pragma once

#include <string>
#include <vector>

#include "radialfs/covering.hpp"
#include "radialfs/profile.hpp"
#include "radialfs/seqspace.hpp"
#include "radialfs/spaces.hpp"

namespace radialfs {

struct AtomEntry {
    int j, k;
    double coefficient;
    std::string source;  // "template" or "band"
};

struct AtomicDecomposition {
    CoefficientGrid coefficients;
    std::vector<AtomEntry> atoms;
    AtomSpec spec;
    int levels = 0;                     // finest level used
    double residual_norm = 0;           // || g - sum s g_{jk} | L_{max(1,p)}(|t|^{d-1}) ||
    double relative_residual = 0;
    double tolerance = 1e-4;
    std::vector<double> level_residuals;  // after levels 0..j (band scheme)
    std::string method;                 // "template-pursuit", "mollifier-bands" or "zero"
    // j = 0 atoms follow the even-atom normalization; for 1_L atoms the bounds are 1,
    // the ratio of the two is recorded here
    double j0_normalization_constant = 1;

    bool meets_tolerance() const { return relative_residual <= tolerance; }
    std::string to_csv() const;
};

struct DecompositionOptions {
    int J = -1;                 // -1: finest level resolvable by the grid
    int d = -1;                 // weight dimension, -1: from the profile
    double tolerance = 1e-4;
    bool try_templates = true;
    int max_template_atoms = 8;
};

// finest level the grid resolves for the band scheme (2^-J >= 8 h)
int max_resolvable_level(const Grid1D& grid);

AtomicDecomposition decompose_profile(const RadialProfile& g, const AtomSpec& spec, const DecompositionOptions& opt = {});

// the atom g_{j,k} of a band decomposition, rebuilt on the grid
RadialProfile band_atom(const RadialProfile& g, const AtomicDecomposition& dec, int j, int k);

// spatial partition on the line at level j: Theta_{j,k}, sum over k is 1
double level_partition(int j, int k, double t);

double tb_norm(const RadialProfile& g, const SpaceParams& params, const AtomSpec& spec, const DecompositionOptions& opt = {});
double tf_norm(const RadialProfile& g, const SpaceParams& params, const AtomSpec& spec, const DecompositionOptions& opt = {});
// both from one decomposition
std::pair<double, double> tb_tf_norms(const AtomicDecomposition& dec, const SpaceParams& params);

double sobolev_radial_norm_1(const RadialProfile& g, double p, int d);
double sobolev_radial_norm_2(const RadialProfile& g, double p, int d);
double sobolev_radial_norm_2m(const RadialProfile& g, double p, int d, int m);

}  // namespace radialfs

#pragma once

#include <vector>

#include "radialfs/profile.hpp"
#include "radialfs/spaces.hpp"

namespace radialfs {

struct LPOptions {
    int max_level = -1;              // -1: every band up to the Nyquist frequency
    double resolution_tol = 1e-3;    // allowed L2 share of the top band
};

// Smooth dyadic windows in angular frequency: phi_0 = 1 on |w| <= 1, 0 on |w| >= 3/2,
// phi_j(w) = phi_0(2^-j w) - phi_0(2^{1-j} w); the top band takes the remainder so the
// windows sum to one exactly.
double lp_window(int j, int top, double omega);

struct DyadicBandSpectrum {
    std::vector<double> t;                   // padded abscissae
    std::vector<std::vector<double>> bands;  // phi_j * g on t
    int top_level = 0;
    double top_share = 0;                    // L2 share of the top band
};

DyadicBandSpectrum dyadic_bands(const RadialProfile& g, const LPOptions& opt = {});

struct LPBandNorms {
    std::vector<double> norms;  // || phi_j * g | L_p(weight) ||
    int top_level = 0;
    double top_share = 0;
};

// weight_d = 1 gives the unweighted norm
LPBandNorms lp_band_norms(const RadialProfile& g, double p, int weight_d, const LPOptions& opt = {});
double combine_band_norms(const LPBandNorms& b, double s, double q);

double lp_besov_norm_1d(const RadialProfile& g, const SpaceParams& params, bool weighted, const LPOptions& opt = {});

}  // namespace radialfs

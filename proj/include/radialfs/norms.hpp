#pragma once

#include <optional>
#include <span>

#include "radialfs/profile.hpp"

namespace radialfs {

// surface area of the unit sphere in R^d, 2 pi^{d/2} / Gamma(d/2)
double sphere_area(int d);
double ball_volume(int d);

// (int_R |v(t)|^p |t|^{d-1} dt)^{1/p} by composite trapezoid; p = inf gives max |v|.
// Works for any sampled values (odd derivatives included).
double weighted_lp_norm(const Grid1D& grid, std::span<const double> v, double p, int d);

// Same, for an even profile. d falls back to the profile's dim.
double weighted_lp_norm(const RadialProfile& g, double p, std::optional<int> d = std::nullopt);

// int_0^inf |g|^p t^{d-1} dt (trapezoid over the nonnegative half, 0 added when absent)
double half_line_integral(const RadialProfile& g, double p, int d);

// ||f | L_p(R^d)|| through the polar reduction, no d-dim quadrature
double lp_norm_rd(const RadialField& f, double p);

}  // namespace radialfs

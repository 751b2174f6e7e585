#pragma once

#include <optional>
#include <span>
#include <vector>

#include "radialfs/profile.hpp"

namespace radialfs {

// Three-point finite differences on arbitrary nodes, one-sided at the ends.
std::vector<double> derivative(const Grid1D& grid, std::span<const double> v);
std::vector<double> second_derivative(const Grid1D& grid, std::span<const double> v);
// order n by composing the two stencils above
std::vector<double> nth_derivative(const Grid1D& grid, std::span<const double> v, int n);

// D_r g = g'' + (d-1)/r g'. At r = 0 the second term is (d-1) g''(0).
RadialProfile radial_laplacian(const RadialProfile& g, std::optional<int> d = std::nullopt);

struct GradientIdentityReport {
    double field_side = 0;    // || |grad ext g| | L_p(R^d) || by polar quadrature of the field
    double profile_side = 0;  // || g' | L_p(R, |t|^{d-1}) ||
    double constant = 0;      // (omega_{d-1}/2)^{1/p}
    double ratio = 1;         // field_side / (constant * profile_side)
};

GradientIdentityReport radial_gradient_identity_check(const RadialProfile& g, double p, int d);

}  // namespace radialfs

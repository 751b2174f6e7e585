#pragma once

#include <vector>

namespace radialfs {

// exp(-1/(1-u^2)) on |u| < 1, zero elsewhere
double bump(double u);
// n-th derivative of bump, exact via the rational recursion
double bump_derivative(double u, int n);
// sup |bump^{(n)}| over the line, cached
double bump_derivative_sup(int n);

// 0 for u <= 0, 1 for u >= 1, C-infinity in between
double smooth_step(double u);

// psi = 1 on |t| <= 1, 0 on |t| >= 3/2
double psi_cutoff(double t);

// ring template: phi(1) = 1, support 1/2 < |u| < 2
double ring_bump(double u);

}  // namespace radialfs

#pragma once

#include <functional>
#include <vector>

namespace radialfs::detail {

struct GaussRule {
    std::vector<double> x, w;  // on [-1, 1]
};

// n-point Gauss-Legendre nodes and weights (Newton on the three-term recurrence)
const GaussRule& gauss_legendre(int n);

// composite Gauss-Legendre over [a, b] with the given number of panels
double integrate(const std::function<double(double)>& f, double a, double b, int panels = 64, int order = 16);

}  // namespace radialfs::detail

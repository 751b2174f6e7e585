#pragma once

#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "radialfs/profile.hpp"

namespace radialfs {

struct TestFamily {
    std::string name;
    std::map<std::string, double> params;
    std::function<double(double)> eval;  // profile level, even in t
    std::string asymptotics;             // documented membership / norm behaviour
    std::vector<double> singular_radii;  // |t| values a grid must avoid
    double support_lo = 0;               // documented window on |t|; support_hi may be inf
    double support_hi = 0;

    double operator()(double t) const { return eval(t); }
    // "name(param=value,...)"
    std::string descriptor() const;
    // samples on the grid; refuses grids with a node on a singular radius
    RadialProfile sample(const Grid1D& grid) const;
};

TestFamily make_f_alpha(double alpha, double p);
TestFamily make_f_alpha_delta(double alpha, double delta);
TestFamily make_Phi_alpha(double alpha);
TestFamily make_f_j_lambda(int j, double lambda);
TestFamily make_f_alpha_sigma(double alpha, double sigma);
TestFamily make_psi_cutoff();
// psi(x) |x|^{s - d/p}, the blow-up witness at the origin
TestFamily make_blowup_witness(double s, double p, int d);

// inverse of descriptor()
TestFamily parse_family(std::string_view descriptor);

// membership of f_{alpha,sigma} in RB^{d/p}_{p,q}
bool f_alpha_sigma_member(double alpha, double sigma, double q);

// offset uniform grid (nodes (i+1/2)h) that avoids every singular radius of the family
Grid1D safe_grid(const TestFamily& f, double h, double T);

}  // namespace radialfs

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "radialfs/profile.hpp"

namespace radialfs {

// atoms plus an absolutely continuous part on (0, inf)
struct RadonMeasure1D {
    std::vector<std::pair<double, double>> atoms;  // (location > 0, signed mass), sorted
    std::function<double(double)> density;         // may be empty
    std::vector<double> density_breaks;            // panel boundaries for quadrature of the density
    double density_support = 0;                    // density vanishes beyond this radius

    // int_{[r, inf)} t^{d-1} d|nu|; the atom at r is included iff include_r
    double weighted_tail_variation(int d, double r, bool include_r = true) const;
    double weighted_total_variation(int d) const { return weighted_tail_variation(d, 0.0); }
};

struct Step {
    double radius;     // g jumps by -amplitude when crossing radius outward
    double amplitude;  // contributes amplitude * 1_[0, radius)
};

struct BumpComponent {
    double center;     // >= 0; center 0 gives an even smooth bump
    double width;
    double amplitude;  // amplitude * exp(-1/(1-u^2)), u = (t - center)/width
};

// Piecewise-C^1 profile on R^+: staircase plus smooth bumps.
class BVProfile {
  public:
    BVProfile(int d, std::vector<Step> steps, std::vector<BumpComponent> bumps = {});

    // "steps:(r1,a1),(r2,a2);bumps:(c,w,A)"
    static BVProfile parse(std::string_view descriptor, int d);
    std::string descriptor() const;

    // random staircase with n steps in (rmin, rmax); positive amplitudes if monotone
    static BVProfile random_staircase(std::uint64_t seed, int n, int d, bool monotone = true, double rmin = 0.1,
                                      double rmax = 10.0);

    int dim() const { return d_; }
    const std::vector<Step>& steps() const { return steps_; }
    const std::vector<BumpComponent>& bumps() const { return bumps_; }

    // representative: right limit at jumps
    double value(double t) const;
    double left_limit(double t) const;
    double smooth_derivative(double t) const;
    RadonMeasure1D derivative_measure() const;
    // g(t / lambda)
    BVProfile dilated(double lambda) const;
    BVProfile scaled(double c) const;
    RadialProfile sample(const Grid1D& grid) const;
    // every radius where the profile is not smooth, plus bump ends, sorted
    std::vector<double> breakpoints() const;
    double support_end() const;

  private:
    int d_;
    std::vector<Step> steps_;
    std::vector<BumpComponent> bumps_;
};

// int_0^inf |g| t^{d-1} dt
double bv_l1_part(const BVProfile& g);
// int_0^inf t^{d-1} d|nu|
double bv_variation_part(const BVProfile& g);
// ||g | L_1(R^+, t^{d-1})|| + int_0^inf r^{d-1} d|nu|(r)
double bv_weighted_norm(const BVProfile& g);

// Total variation of ext g in R^d: Isotropic uses |Df|, CoordinateSum the sum over the d partials.
enum class BVConvention { Isotropic, CoordinateSum };
// int_{S^{d-1}} sum_i |n_i| dsigma
double coordinate_sum_constant(int d);

struct BVEquivalenceReport {
    double l1_rd = 0;          // ||ext g | L_1(R^d)||
    double variation_rd = 0;   // |D ext g|(R^d) in the chosen convention
    double norm_rd = 0;
    double norm_1d = 0;
    double ratio = 1;          // norm_rd / norm_1d, 1 when both vanish
    // smooth part only: Cartesian gradient quadrature of ext g over omega * int |g'| t^{d-1}
    std::optional<double> gradient_cross_check;
};
BVEquivalenceReport bv_equivalence_check(const BVProfile& g, BVConvention conv = BVConvention::Isotropic,
                                         bool cross_check = false);

struct BVDecayRow {
    double radius;
    bool left;            // left limit at a jump radius
    double lhs;           // r^{d-1} |g(r)|
    double tail;          // int_{[r,inf)} t^{d-1} d|nu| (atom at r excluded for right limits)
    double norm_ratio;    // lhs / bv_weighted_norm
};
struct BVDecayReport {
    std::vector<BVDecayRow> rows;
    bool tail_bound_holds = true;   // lhs <= tail at every row
    bool norm_bound_holds = true;   // lhs <= C * norm with C = 1
    bool eventually_zero = true;    // lhs vanishes beyond the support
    double max_tail_ratio = 0;      // max lhs / tail over rows with tail > 0
};
// radii empty: every step radius (both limits) plus the given radii
BVDecayReport bv_decay_check(const BVProfile& g, const std::vector<double>& radii = {});

// pairing identity int g (phi t^{d-1})' dt = -int phi t^{d-1} dnu against 12 fixed test functions
struct PairingReport {
    std::vector<double> lhs, rhs;
    double max_relative_defect = 0;
};
PairingReport bv_pairing_check(const BVProfile& g);

}  // namespace radialfs

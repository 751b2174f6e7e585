#include "radialfs/norms.hpp"

#include <cmath>
#include <numbers>

#include "radialfs/errors.hpp"

namespace radialfs {

double sphere_area(int d) {
    if (d < 1) throw InvalidDimension("sphere_area: d >= 1");
    return 2.0 * std::pow(std::numbers::pi, 0.5 * d) / std::tgamma(0.5 * d);
}

double ball_volume(int d) { return sphere_area(d) / d; }

namespace {

inline double powp(double a, double p) {
    if (p == 1.0) return a;
    if (p == 2.0) return a * a;
    return std::pow(a, p);
}

inline double weight(double t, int d) {
    const double r = std::abs(t);
    switch (d) {
        case 1: return 1.0;
        case 2: return r;
        case 3: return r * r;
        default: return std::pow(r, d - 1);
    }
}

void check_p(double p) {
    if (!(p > 0)) throw InvalidInput("p must be > 0");
}

}  // namespace

double weighted_lp_norm(const Grid1D& grid, std::span<const double> v, double p, int d) {
    check_p(p);
    if (d < 1) throw InvalidDimension("weighted_lp_norm: d >= 1");
    if (v.size() != grid.size()) throw InvalidInput("values do not match grid");
    if (v.empty()) throw InvalidInput("empty grid");
    if (std::isinf(p)) {
        double m = 0;
        for (double x : v) m = std::max(m, std::abs(x));
        return m;
    }
    const auto& x = grid.nodes();
    double sum = 0;
    double prev = powp(std::abs(v[0]), p) * weight(x[0], d);
    for (std::size_t i = 1; i < x.size(); ++i) {
        const double cur = powp(std::abs(v[i]), p) * weight(x[i], d);
        sum += 0.5 * (x[i] - x[i - 1]) * (prev + cur);
        prev = cur;
    }
    return p == 1.0 ? sum : std::pow(sum, 1.0 / p);
}

double weighted_lp_norm(const RadialProfile& g, double p, std::optional<int> d) {
    const auto dd = d ? d : g.dim();
    if (!dd) throw InvalidDimension("weighted_lp_norm: dimension not supplied");
    return weighted_lp_norm(g.grid(), g.values(), p, *dd);
}

double half_line_integral(const RadialProfile& g, double p, int d) {
    check_p(p);
    if (std::isinf(p)) throw InvalidInput("half_line_integral needs finite p");
    const auto& x = g.grid().nodes();
    const auto& v = g.values();
    std::size_t i0 = g.grid().first_nonnegative();
    double sum = 0;
    // half of the segment straddling the origin when 0 is not a node
    if (x[i0] > 0) sum += x[i0] * powp(std::abs(v[i0]), p) * weight(x[i0], d);
    for (std::size_t i = i0 + 1; i < x.size(); ++i)
        sum += 0.5 * (x[i] - x[i - 1]) *
               (powp(std::abs(v[i - 1]), p) * weight(x[i - 1], d) + powp(std::abs(v[i]), p) * weight(x[i], d));
    return sum;
}

double lp_norm_rd(const RadialField& f, double p) {
    check_p(p);
    if (std::isinf(p)) throw InvalidInput("lp_norm_rd needs finite p");
    const int d = f.dim();
    if (d < 2) throw InvalidDimension("lp_norm_rd: d >= 2");
    // the trapezoid over R is twice the half-line sum on an even grid
    const double full = std::pow(weighted_lp_norm(f.profile().grid(), f.profile().values(), p, d), p);
    return std::pow(0.5 * sphere_area(d) * full, 1.0 / p);
}

}  // namespace radialfs

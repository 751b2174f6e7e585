#include "radialfs/radial_ops.hpp"

#include <cmath>
#include <numbers>

#include "radialfs/errors.hpp"
#include "radialfs/norms.hpp"

namespace radialfs {

std::vector<double> derivative(const Grid1D& grid, std::span<const double> v) {
    const auto& x = grid.nodes();
    const std::size_t n = x.size();
    if (n < 3) throw ResolutionError("need at least 3 nodes to differentiate");
    std::vector<double> out(n);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double h1 = x[i] - x[i - 1], h2 = x[i + 1] - x[i];
        out[i] = -h2 / (h1 * (h1 + h2)) * v[i - 1] + (h2 - h1) / (h1 * h2) * v[i] + h1 / (h2 * (h1 + h2)) * v[i + 1];
    }
    {
        const double h1 = x[1] - x[0], h2 = x[2] - x[1];
        out[0] = -(2 * h1 + h2) / (h1 * (h1 + h2)) * v[0] + (h1 + h2) / (h1 * h2) * v[1] - h1 / (h2 * (h1 + h2)) * v[2];
    }
    {
        const double h2 = x[n - 1] - x[n - 2], h1 = x[n - 2] - x[n - 3];
        out[n - 1] = (2 * h2 + h1) / (h2 * (h1 + h2)) * v[n - 1] - (h1 + h2) / (h1 * h2) * v[n - 2] +
                     h2 / (h1 * (h1 + h2)) * v[n - 3];
    }
    return out;
}

std::vector<double> second_derivative(const Grid1D& grid, std::span<const double> v) {
    const auto& x = grid.nodes();
    const std::size_t n = x.size();
    if (n < 3) throw ResolutionError("need at least 3 nodes for second differences");
    std::vector<double> out(n);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double h1 = x[i] - x[i - 1], h2 = x[i + 1] - x[i];
        out[i] = 2.0 * (v[i - 1] / (h1 * (h1 + h2)) - v[i] / (h1 * h2) + v[i + 1] / (h2 * (h1 + h2)));
    }
    out[0] = out[1];
    out[n - 1] = out[n - 2];
    return out;
}

std::vector<double> nth_derivative(const Grid1D& grid, std::span<const double> v, int n) {
    if (n < 0) throw InvalidInput("derivative order must be >= 0");
    std::vector<double> cur(v.begin(), v.end());
    while (n >= 2) {
        cur = second_derivative(grid, cur);
        n -= 2;
    }
    if (n == 1) cur = derivative(grid, cur);
    return cur;
}

RadialProfile radial_laplacian(const RadialProfile& g, std::optional<int> d) {
    const auto dd = d ? d : g.dim();
    if (!dd || *dd < 2) throw InvalidDimension("radial_laplacian needs d >= 2");
    const auto& grid = g.grid();
    if (grid.size() < 3) throw ResolutionError("need at least 3 nodes to differentiate");
    const auto g1 = derivative(grid, g.values());
    const auto g2 = second_derivative(grid, g.values());
    std::vector<double> out(grid.size());
    for (std::size_t i = grid.first_nonnegative(); i < grid.size(); ++i) {
        const double t = grid[i];
        out[i] = (t == 0.0) ? *dd * g2[i] : g2[i] + (*dd - 1) / t * g1[i];
        out[grid.mirror(i)] = out[i];
    }
    return RadialProfile(grid, std::move(out), *dd);
}

GradientIdentityReport radial_gradient_identity_check(const RadialProfile& g, double p, int d) {
    if (!(p >= 1) || std::isinf(p)) throw InvalidInput("gradient identity needs 1 <= p < inf");
    if (d != 2 && d != 3) throw InvalidDimension("gradient identity implemented for d = 2, 3");
    GradientIdentityReport rep;
    rep.constant = std::pow(0.5 * sphere_area(d), 1.0 / p);
    const auto gp = derivative(g.grid(), g.values());
    rep.profile_side = weighted_lp_norm(g.grid(), gp, p, d);

    // polar quadrature of |grad f| for f = ext g with linear interpolation; the
    // gradient is a Cartesian central difference of the field itself
    RadialField f(g, d);
    const auto& x = g.grid().nodes();
    const std::size_t i0 = g.grid().first_nonnegative();
    const int nphi = 16, ntheta = 8;
    std::vector<std::vector<double>> dirs;
    std::vector<double> dir_w;
    if (d == 2) {
        for (int a = 0; a < nphi; ++a) {
            const double phi = 2 * std::numbers::pi * (a + 0.5) / nphi;
            dirs.push_back({std::cos(phi), std::sin(phi)});
            dir_w.push_back(2 * std::numbers::pi / nphi);
        }
    } else {
        // midpoint in cos(theta) and phi
        for (int b = 0; b < ntheta; ++b) {
            const double z = -1 + 2 * (b + 0.5) / ntheta, s = std::sqrt(1 - z * z);
            for (int a = 0; a < nphi; ++a) {
                const double phi = 2 * std::numbers::pi * (a + 0.5) / nphi;
                dirs.push_back({s * std::cos(phi), s * std::sin(phi), z});
                dir_w.push_back(4 * std::numbers::pi / (ntheta * nphi));
            }
        }
    }
    double sum = 0;
    std::vector<double> pt(d), q(d);
    // the cell straddling the origin when 0 is not a node contributes its positive half
    double lo = (x[i0] > 0) ? 0.0 : x[i0];
    std::size_t start = (x[i0] > 0) ? i0 : i0 + 1;
    for (std::size_t i = start; i < x.size(); ++i) {
        const double a = (i == start) ? lo : x[i - 1], b = x[i];
        const double r = 0.5 * (a + b), w = b - a;
        const double delta = 0.125 * w;
        for (std::size_t m = 0; m < dirs.size(); ++m) {
            for (int c = 0; c < d; ++c) pt[c] = r * dirs[m][c];
            double grad2 = 0;
            for (int c = 0; c < d; ++c) {
                q = pt;
                q[c] += delta;
                const double fp = f(q);
                q[c] -= 2 * delta;
                const double fm = f(q);
                const double dc = (fp - fm) / (2 * delta);
                grad2 += dc * dc;
            }
            sum += w * dir_w[m] * std::pow(std::sqrt(grad2), p) * std::pow(r, d - 1);
        }
    }
    rep.field_side = std::pow(sum, 1.0 / p);
    const double denom = rep.constant * rep.profile_side;
    if (denom == 0 && rep.field_side == 0)
        rep.ratio = 1.0;
    else
        rep.ratio = rep.field_side / denom;
    return rep;
}

}  // namespace radialfs

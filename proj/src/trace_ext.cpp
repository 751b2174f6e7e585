#include "radialfs/trace_ext.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "radialfs/errors.hpp"
#include "radialfs/radial_ops.hpp"

namespace radialfs {

namespace {

void require_dim(int d) {
    if (d < 2) throw InvalidDimension("radial fields need d >= 2");
}

void require_tensor_axis(const Grid1D& axis) {
    if (!axis.even()) throw InvalidInput("tensor axis must be an even grid");
    if (!axis.is_uniform()) throw InvalidInput("tensor axis must be uniform");
    if (axis.size() % 2 == 0) throw InvalidInput("tensor axis must contain 0");
}

std::size_t tensor_size(std::size_t n, int d) {
    std::size_t s = 1;
    for (int i = 0; i < d; ++i) s *= n;
    return s;
}

// random orthogonal matrix by Gram-Schmidt on Gaussian columns
std::vector<double> random_rotation(int d, std::mt19937_64& rng) {
    std::normal_distribution<double> N(0.0, 1.0);
    std::vector<double> Q(static_cast<std::size_t>(d * d));
    for (int c = 0; c < d; ++c) {
        for (int r = 0; r < d; ++r) Q[r * d + c] = N(rng);
        for (int b = 0; b < c; ++b) {
            double dot = 0;
            for (int r = 0; r < d; ++r) dot += Q[r * d + c] * Q[r * d + b];
            for (int r = 0; r < d; ++r) Q[r * d + c] -= dot * Q[r * d + b];
        }
        double nrm = 0;
        for (int r = 0; r < d; ++r) nrm += Q[r * d + c] * Q[r * d + c];
        nrm = std::sqrt(nrm);
        for (int r = 0; r < d; ++r) Q[r * d + c] /= nrm;
    }
    return Q;
}

}  // namespace

RadialGridField RadialGridField::from_profile(RadialProfile g, int d, Interp interp) {
    require_dim(d);
    RadialGridField f;
    f.backing_ = Backing::Profile;
    f.d_ = d;
    f.provenance_ = "ext(profile)";
    f.axis_ = g.grid();
    f.interp_ = interp;
    f.profile_ = std::move(g);
    return f;
}

RadialGridField RadialGridField::from_evaluator(FieldFn fn, int d, Grid1D axis, std::string provenance) {
    require_dim(d);
    if (!axis.even()) throw InvalidInput("trace axis must be an even grid");
    RadialGridField f;
    f.backing_ = Backing::Evaluator;
    f.d_ = d;
    f.provenance_ = std::move(provenance);
    f.axis_ = std::move(axis);
    f.fn_ = std::move(fn);
    return f;
}

RadialGridField RadialGridField::from_samples(Grid1D axis, int d, std::vector<double> values, std::string provenance) {
    require_dim(d);
    require_tensor_axis(axis);
    if (values.size() != tensor_size(axis.size(), d)) throw InvalidInput("sample count does not match axis^d");
    for (double v : values)
        if (!std::isfinite(v)) throw InvalidInput("non-finite sample");
    RadialGridField f;
    f.backing_ = Backing::Samples;
    f.d_ = d;
    f.provenance_ = std::move(provenance);
    f.axis_ = std::move(axis);
    f.samples_ = std::move(values);
    return f;
}

double RadialGridField::operator()(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != d_) throw InvalidDimension("point dimension mismatch");
    switch (backing_) {
        case Backing::Profile: {
            double r2 = 0;
            for (double v : x) r2 += v * v;
            const double r = std::sqrt(r2);
            return interp_ == Interp::Cubic ? profile_->cubic(r) : (*profile_)(r);
        }
        case Backing::Evaluator:
            return fn_(x);
        case Backing::Samples: {
            std::size_t flat = 0;
            for (double v : x) {
                const auto& nd = axis_.nodes();
                auto it = std::lower_bound(nd.begin(), nd.end(), v);
                if (it == nd.end() || *it != v) throw InvalidInput("sample-backed field evaluated off the tensor grid");
                flat = flat * axis_.size() + static_cast<std::size_t>(it - nd.begin());
            }
            return samples_[flat];
        }
    }
    return 0.0;
}

GridFunction RadialGridField::tensor_samples(const Grid1D& axis) const {
    require_tensor_axis(axis);
    const std::size_t n = axis.size();
    GridFunction g{{d_, static_cast<int>(n), axis.front(), axis.spacing()}, {}};
    if (backing_ == Backing::Samples) {
        if (axis.nodes() != axis_.nodes()) throw InvalidInput("sample-backed field cannot be resampled");
        g.values = samples_;
        return g;
    }
    g.values.resize(tensor_size(n, d_));
    std::vector<double> x(d_);
    for (std::size_t flat = 0; flat < g.values.size(); ++flat) {
        std::size_t rest = flat;
        for (int ax = d_ - 1; ax >= 0; --ax) {
            x[ax] = axis[rest % n];
            rest /= n;
        }
        g.values[flat] = (*this)(x);
    }
    return g;
}

RadialityReport radiality(const RadialGridField& f, std::uint64_t seed, int trials) {
    RadialityReport rep;
    const int d = f.dim();
    if (f.backing() == RadialGridField::Backing::Samples) {
        // nodes with equal integer squared index norm share a radius exactly
        const auto& axis = f.axis();
        const std::size_t n = axis.size();
        const long m = static_cast<long>(n / 2);
        std::map<long, std::pair<double, double>> range;
        const auto G = f.tensor_samples();
        for (std::size_t flat = 0; flat < G.values.size(); ++flat) {
            std::size_t rest = flat;
            long r2 = 0;
            for (int ax = 0; ax < d; ++ax) {
                const long i = static_cast<long>(rest % n) - m;
                rest /= n;
                r2 += i * i;
            }
            const double v = G.values[flat];
            rep.scale = std::max(rep.scale, std::abs(v));
            auto [it, fresh] = range.try_emplace(r2, v, v);
            if (!fresh) {
                it->second.first = std::min(it->second.first, v);
                it->second.second = std::max(it->second.second, v);
                ++rep.comparisons;
            }
        }
        for (const auto& [r2, mm] : range) rep.max_defect = std::max(rep.max_defect, mm.second - mm.first);
        return rep;
    }
    std::mt19937_64 rng(seed);
    const double R = std::abs(f.axis().back());
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    std::vector<double> x(d), y(d);
    for (int t = 0; t < trials; ++t) {
        const auto Q = random_rotation(d, rng);
        double r2;
        do {
            r2 = 0;
            for (int i = 0; i < d; ++i) {
                x[i] = R * U(rng);
                r2 += x[i] * x[i];
            }
        } while (r2 > R * R);
        for (int i = 0; i < d; ++i) {
            y[i] = 0;
            for (int k = 0; k < d; ++k) y[i] += Q[i * d + k] * x[k];
        }
        const double a = f(x), b = f(y);
        rep.scale = std::max({rep.scale, std::abs(a), std::abs(b)});
        rep.max_defect = std::max(rep.max_defect, std::abs(a - b));
        ++rep.comparisons;
    }
    return rep;
}

RadialProfile trace(const RadialGridField& f, double tol) {
    const auto rep = radiality(f);
    if (!rep.radial(tol))
        throw SymmetryViolation("field is not radial: relative defect " + std::to_string(rep.relative()));
    const Grid1D& axis = f.axis();
    const int d = f.dim();
    const std::size_t n = axis.size();
    std::vector<double> v(n);
    std::vector<double> x(d, 0.0);
    if (f.backing() == RadialGridField::Backing::Samples) {
        const std::size_t m = n / 2;
        std::size_t stride = 1, offset = 0;
        for (int ax = 1; ax < d; ++ax) stride *= n;
        for (int ax = 1; ax < d; ++ax) offset = offset * n + m;
        const auto G = f.tensor_samples();
        for (std::size_t i = 0; i < n; ++i) v[i] = G.values[i * stride + offset];
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            x[0] = axis[i];
            v[i] = f(x);
        }
    }
    double scale = 0;
    for (double a : v) scale = std::max(scale, std::abs(a));
    for (std::size_t i = axis.first_nonnegative(); i < n; ++i) {
        const std::size_t j = axis.mirror(i);
        if (std::abs(v[i] - v[j]) > tol * scale)
            throw SymmetryViolation("field is not even along the first axis");
        v[j] = v[i];
    }
    return RadialProfile(axis, std::move(v), d);
}

RadialGridField extend(const RadialProfile& g, int d, Interp interp) {
    return RadialGridField::from_profile(g, d, interp);
}

double cm_norm(const RadialProfile& g, int m) {
    if (m < 0) throw InvalidInput("m >= 0");
    if (m > 0 && g.size() < 3) throw ResolutionError("too few nodes to differentiate");
    double total = 0;
    for (int n = 0; n <= m; ++n) {
        const auto D = n == 0 ? g.values() : nth_derivative(g.grid(), g.values(), n);
        double sup = 0;
        for (double v : D) sup = std::max(sup, std::abs(v));
        total += sup;
    }
    return total;
}

double cm_norm(const RadialGridField& f, int m, const Grid1D& axis) {
    if (m < 0) throw InvalidInput("m >= 0");
    const auto G = f.tensor_samples(axis);
    double total = 0;
    for (int n = 0; n <= m; ++n)
        for (const auto& alpha : multi_indices(f.dim(), n)) {
            const auto D = n == 0 ? G.values : tensor_partial(G, alpha);
            double sup = 0;
            for (double v : D) sup = std::max(sup, std::abs(v));
            total += sup;
        }
    return total;
}

double cm_norm(const RadialGridField& f, int m) { return cm_norm(f, m, f.axis()); }

OriginSmoothness origin_smoothness(const RadialProfile& g, double tol) {
    const auto& grid = g.grid();
    const std::size_t i0 = grid.first_nonnegative();
    if (grid[i0] != 0.0 || i0 + 2 >= grid.size()) throw InvalidInput("origin smoothness needs 0 and two nodes beyond");
    const double h1 = grid[i0 + 1], h2 = grid[i0 + 2];
    const double g0 = g.value(i0), g1 = g.value(i0 + 1), g2 = g.value(i0 + 2);
    // second-order one-sided derivative on nonuniform nodes 0, h1, h2
    const double slope = -(h1 + h2) / (h1 * h2) * g0 + h2 / (h1 * (h2 - h1)) * g1 - h1 / (h2 * (h2 - h1)) * g2;
    OriginSmoothness out;
    out.odd_slope = slope;
    double scale = 0;
    for (double v : g.values()) scale = std::max(scale, std::abs(v));
    out.smooth = std::abs(slope) <= tol * std::max(scale, 1.0);
    return out;
}

SupportAnnulus support_annulus(const RadialProfile& g, double threshold) {
    double mx = 0;
    for (double v : g.values()) mx = std::max(mx, std::abs(v));
    SupportAnnulus out;
    if (mx == 0) return out;
    out.empty = false;
    out.a = INFINITY;
    for (std::size_t i = 0; i < g.size(); ++i)
        if (std::abs(g.value(i)) > threshold * mx) {
            const double r = std::abs(g.t(i));
            out.a = std::min(out.a, r);
            out.b = std::max(out.b, r);
        }
    return out;
}

SupportAnnulus support_annulus(const RadialGridField& f, const Grid1D& axis, double threshold) {
    const auto G = f.tensor_samples(axis);
    double mx = 0;
    for (double v : G.values) mx = std::max(mx, std::abs(v));
    SupportAnnulus out;
    if (mx == 0) return out;
    out.empty = false;
    out.a = INFINITY;
    const std::size_t n = axis.size();
    for (std::size_t flat = 0; flat < G.values.size(); ++flat) {
        if (!(std::abs(G.values[flat]) > threshold * mx)) continue;
        std::size_t rest = flat;
        double r2 = 0;
        for (int ax = 0; ax < f.dim(); ++ax) {
            const double x = axis[rest % n];
            rest /= n;
            r2 += x * x;
        }
        const double r = std::sqrt(r2);
        out.a = std::min(out.a, r);
        out.b = std::max(out.b, r);
    }
    return out;
}

}  // namespace radialfs

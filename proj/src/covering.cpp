#include "radialfs/covering.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include "radialfs/bumps.hpp"
#include "radialfs/errors.hpp"
#include "radialfs/norms.hpp"
#include "radialfs/radial_ops.hpp"

namespace radialfs {

namespace {

constexpr double kRadius0 = 6.0;        // half of the diameter 12 at level 0
constexpr double kCoverMargin = 0.9;    // centers must reach every sample within 0.9 radius

std::vector<std::vector<double>> sphere_points(int d, int n, double rho) {
    std::vector<std::vector<double>> out;
    out.reserve(n);
    if (d == 2) {
        for (int l = 0; l < n; ++l) {
            const double a = 2 * std::numbers::pi * l / n;
            out.push_back({rho * std::cos(a), rho * std::sin(a)});
        }
    } else {
        const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
        for (int i = 0; i < n; ++i) {
            // the polar axis of the spiral is x1
            const double z = 1.0 - (2.0 * i + 1.0) / n;
            const double s = std::sqrt(std::max(0.0, 1 - z * z));
            const double phi = golden * i;
            out.push_back({rho * z, rho * s * std::cos(phi), rho * s * std::sin(phi)});
        }
    }
    return out;
}

double dist2(std::span<const double> a, std::span<const double> b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return s;
}

double axis_distance(std::span<const double> c) {
    double s = 0;
    for (std::size_t i = 1; i < c.size(); ++i) s += c[i] * c[i];
    return std::sqrt(s);
}

// uniform sample of P_{0,k} = {k <= |x| < k+1}
std::vector<double> sample_annulus(int d, int k, std::mt19937_64& rng) {
    std::normal_distribution<double> N(0.0, 1.0);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    std::vector<double> x(d);
    double n2 = 0;
    do {
        n2 = 0;
        for (auto& c : x) {
            c = N(rng);
            n2 += c * c;
        }
    } while (n2 == 0);
    const double lo = std::pow(k, d), hi = std::pow(k + 1, d);
    const double r = std::pow(lo + U(rng) * (hi - lo), 1.0 / d);
    for (auto& c : x) c *= r / std::sqrt(n2);
    return x;
}

bool covers(int d, int k, int n, int samples, std::uint64_t seed) {
    const auto cs = sphere_points(d, n, k + 0.5);
    std::mt19937_64 rng(seed + 7919ULL * k);
    const double lim2 = (kCoverMargin * kRadius0) * (kCoverMargin * kRadius0);
    for (int s = 0; s < samples; ++s) {
        const auto x = sample_annulus(d, k, rng);
        bool hit = false;
        for (const auto& c : cs)
            if (dist2(x, c) <= lim2) {
                hit = true;
                break;
            }
        if (!hit) return false;
    }
    return true;
}

}  // namespace

double AnnularCovering::radius(int j) { return std::ldexp(kRadius0, -j); }

AnnularCovering AnnularCovering::build(int d, int J, int Kmax, std::uint64_t seed, int mc_samples) {
    if (d != 2 && d != 3) throw InvalidDimension("coverings are built for d = 2, 3");
    if (J < 0 || Kmax < 1) throw InvalidInput("build_covering: J >= 0, Kmax >= 1");
    AnnularCovering cov;
    cov.d_ = d;
    cov.J_ = J;
    cov.Kmax_ = Kmax;
    cov.centers0_.resize(Kmax + 1);
    cov.axis_.resize(Kmax + 1);
    cov.centers0_[0] = {std::vector<double>(d, 0.0)};
    for (int k = 1; k <= Kmax; ++k) {
        const int cap = static_cast<int>(std::lround(std::pow(2 * k + 1, d - 1)));
        if (!covers(d, k, cap, mc_samples, seed))
            throw ConstructionError("annulus " + std::to_string(k) + " not covered by the maximal count");
        int lo = 0, hi = cap;  // covers(hi) holds, covers(lo) assumed false
        while (hi - lo > 1) {
            const int mid = (lo + hi) / 2;
            if (covers(d, k, mid, mc_samples, seed))
                hi = mid;
            else
                lo = mid;
        }
        cov.centers0_[k] = sphere_points(d, hi, k + 0.5);
    }
    // enumerate balls meeting the enlarged axis tube first
    for (int k = 0; k <= Kmax; ++k) {
        auto& cs = cov.centers0_[k];
        std::stable_partition(cs.begin(), cs.end(),
                              [](const std::vector<double>& c) { return axis_distance(c) < 2 * kRadius0; });
        int n_enl = 0, n_half = 0;
        for (const auto& c : cs) {
            if (axis_distance(c) < 2 * kRadius0) ++n_enl;
            if (axis_distance(c) < 0.5 * kRadius0) ++n_half;
        }
        cov.axis_[k] = n_enl;
        cov.K_ = std::max(cov.K_, n_enl);
        cov.K_half_ = std::max(cov.K_half_, n_half);
    }
    return cov;
}

std::vector<double> AnnularCovering::center(int j, int k, int ell) const {
    std::vector<double> c = centers0_.at(k).at(ell - 1);
    for (auto& x : c) x = std::ldexp(x, -j);
    return c;
}

std::vector<Ball> AnnularCovering::balls(int j, int k) const {
    std::vector<Ball> out;
    for (int l = 1; l <= count(k); ++l) out.push_back({center(j, k, l), radius(j), j, k, l});
    return out;
}

std::pair<int, int> AnnularCovering::candidate_annuli(double r, int j) const {
    const double u = std::ldexp(r, j);
    const int lo = std::max(0, static_cast<int>(std::floor(u - kRadius0 - 0.5)));
    const int hi = std::min(Kmax_, static_cast<int>(std::ceil(u + kRadius0 - 0.5)));
    return {lo, hi};
}

int AnnularCovering::overlap(std::span<const double> x, int j) const {
    double r2 = 0;
    for (double c : x) r2 += c * c;
    auto [lo, hi] = candidate_annuli(std::sqrt(r2), j);
    const double R2 = radius(j) * radius(j);
    int n = 0;
    for (int k = lo; k <= hi; ++k)
        for (int l = 1; l <= count(k); ++l)
            if (dist2(x, center(j, k, l)) < R2) ++n;
    return n;
}

double AnnularCovering::coverage_distance(int j, int k, int samples, std::uint64_t seed) const {
    std::mt19937_64 rng(seed);
    const auto bs = balls(j, k);
    double worst = 0;
    for (int s = 0; s < samples; ++s) {
        auto x = sample_annulus(d_, k, rng);
        for (auto& c : x) c = std::ldexp(c, -j);
        double best = INFINITY;
        for (const auto& b : bs) best = std::min(best, dist2(x, b.center));
        worst = std::max(worst, std::sqrt(best));
    }
    return std::ldexp(worst, j);
}

std::string AnnularCovering::to_csv(int j) const {
    std::string out = "j,k,l";
    for (int i = 1; i <= d_; ++i) out += ",x" + std::to_string(i);
    out += ",radius\n";
    char buf[64];
    for (int k = 0; k <= Kmax_; ++k)
        for (int l = 1; l <= count(k); ++l) {
            out += std::to_string(j) + "," + std::to_string(k) + "," + std::to_string(l);
            for (double c : center(j, k, l)) {
                std::snprintf(buf, sizeof buf, ",%.17g", c);
                out += buf;
            }
            std::snprintf(buf, sizeof buf, ",%.17g\n", radius(j));
            out += buf;
        }
    return out;
}

// ---------------------------------------------------------------- partition

namespace {

std::vector<std::vector<double>> level0_samples(int d, double rmax, int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> N(0.0, 1.0);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    std::vector<std::vector<double>> out;
    for (int i = 0; i < n; ++i) {
        std::vector<double> x(d);
        double n2 = 0;
        for (auto& c : x) {
            c = N(rng);
            n2 += c * c;
        }
        const double r = rmax * std::pow(U(rng), 1.0 / d);
        for (auto& c : x) c *= r / std::sqrt(n2);
        out.push_back(std::move(x));
    }
    return out;
}

}  // namespace

PartitionOfUnity::PartitionOfUnity(const AnnularCovering& cov, int L) : cov_(cov), L_(L) {
    if (L < 0) throw InvalidInput("partition order L >= 0");
    double c = 1.0;  // |psi| <= 1
    for (int n = 1; n <= std::min(L, 2); ++n) c = std::max(c, sampled_derivative_bound(0, n, 400, 0xC0FFEEULL));
    C_L_ = c;
}

std::vector<PartitionOfUnity::Entry> PartitionOfUnity::evaluate(std::span<const double> x, int j,
                                                                bool with_grad) const {
    const int d = cov_.dim();
    double r2 = 0;
    for (double c : x) r2 += c * c;
    auto [lo, hi] = cov_.candidate_annuli(std::sqrt(r2), j);
    const double R = AnnularCovering::radius(j);
    std::vector<Entry> out;
    std::vector<double> gsum(d, 0.0);
    double sum = 0;
    for (int k = lo; k <= hi; ++k)
        for (int l = 1; l <= cov_.count(k); ++l) {
            const auto c = cov_.center(j, k, l);
            const double dist = std::sqrt(dist2(x, c));
            const double u = dist / R;
            const double b = bump(u);
            if (b == 0.0) continue;
            Entry e{k, l, b, {}};
            if (with_grad) {
                e.grad.assign(d, 0.0);
                if (dist > 0) {
                    const double db = bump_derivative(u, 1) / R;
                    for (int i = 0; i < d; ++i) e.grad[i] = db * (x[i] - c[i]) / dist;
                }
                for (int i = 0; i < d; ++i) gsum[i] += e.grad[i];
            }
            sum += b;
            out.push_back(std::move(e));
        }
    if (sum < 1e-8) throw ConstructionError("partition of unity: coverage hole");
    for (auto& e : out) {
        if (with_grad)
            for (int i = 0; i < d; ++i) e.grad[i] = (e.grad[i] * sum - e.value * gsum[i]) / (sum * sum);
        e.value /= sum;
    }
    return out;
}

double PartitionOfUnity::sum(std::span<const double> x, int j) const {
    double s = 0;
    for (const auto& e : evaluate(x, j)) s += e.value;
    return s;
}

double PartitionOfUnity::value(int j, int k, int ell, std::span<const double> x) const {
    const auto c = cov_.center(j, k, ell);
    if (dist2(x, c) >= AnnularCovering::radius(j) * AnnularCovering::radius(j)) return 0.0;
    for (const auto& e : evaluate(x, j))
        if (e.k == k && e.ell == ell) return e.value;
    return 0.0;
}

double PartitionOfUnity::partial(int j, int k, int ell, std::span<const double> x, std::span<const int> alpha) const {
    int order = 0;
    for (int a : alpha) order += a;
    if (order == 0) return value(j, k, ell, x);
    if (order == 1) {
        for (const auto& e : evaluate(x, j, true))
            if (e.k == k && e.ell == ell)
                for (std::size_t i = 0; i < alpha.size(); ++i)
                    if (alpha[i] == 1) return e.grad[i];
        return 0.0;
    }
    // peel one derivative and difference the rest
    std::vector<int> rest(alpha.begin(), alpha.end());
    std::size_t axis = 0;
    while (rest[axis] == 0) ++axis;
    rest[axis] -= 1;
    const double delta = 1e-3 * AnnularCovering::radius(j);
    std::vector<double> xp(x.begin(), x.end()), xm(x.begin(), x.end());
    xp[axis] += delta;
    xm[axis] -= delta;
    return (partial(j, k, ell, xp, rest) - partial(j, k, ell, xm, rest)) / (2 * delta);
}

double PartitionOfUnity::sampled_derivative_bound(int j, int order, int samples, std::uint64_t seed) const {
    const int d = cov_.dim();
    const double rmax = std::max(1.0, cov_.max_k() - 6.5);
    const auto pts = level0_samples(d, rmax, samples, seed);
    const auto alphas = multi_indices(d, order);
    double m = 0;
    std::vector<double> x(d);
    for (const auto& p0 : pts) {
        for (int i = 0; i < d; ++i) x[i] = std::ldexp(p0[i], -j);
        if (order == 1) {
            for (const auto& e : evaluate(x, j, true)) {
                double g2 = 0;
                for (double g : e.grad) g2 += g * g;
                m = std::max(m, std::sqrt(g2));
            }
            continue;
        }
        for (const auto& e : evaluate(x, j))
            for (const auto& a : alphas) m = std::max(m, std::abs(partial(j, e.k, e.ell, x, a)));
    }
    return std::ldexp(m, -j * order);
}

// ---------------------------------------------------------------- atoms

bool AtomSpec::B_admissible(int d) const {
    return L >= std::max(0, static_cast<int>(std::floor(s)) + 1) &&
           M >= std::max(static_cast<int>(std::floor(sigma_p(p, d) - s)), -1);
}

bool AtomSpec::F_admissible(int d, double q) const {
    return L >= std::max(0, static_cast<int>(std::floor(s)) + 1) &&
           M >= std::max(static_cast<int>(std::floor(sigma_pq(p, q, d) - s)), -1);
}

std::size_t TensorGrid::size() const {
    std::size_t n = 1;
    for (int i = 0; i < d; ++i) n *= static_cast<std::size_t>(this->n);
    return n;
}

void TensorGrid::point(std::size_t flat, std::span<double> out) const {
    for (int ax = d - 1; ax >= 0; --ax) {
        out[ax] = coord(static_cast<int>(flat % static_cast<std::size_t>(n)));
        flat /= static_cast<std::size_t>(n);
    }
}

GridFunction sample_tensor(int d, int n, double lo, double hi, const std::function<double(std::span<const double>)>& f) {
    if (d < 1 || n < 3 || !(hi > lo)) throw InvalidInput("sample_tensor: bad grid");
    GridFunction g{{d, n, lo, (hi - lo) / (n - 1)}, {}};
    g.values.resize(g.grid.size());
    std::vector<double> x(d);
    for (std::size_t i = 0; i < g.values.size(); ++i) {
        g.grid.point(i, x);
        g.values[i] = f(x);
    }
    return g;
}

std::vector<double> tensor_partial(const GridFunction& f, std::span<const int> alpha) {
    const auto& G = f.grid;
    std::vector<double> axis_nodes(G.n);
    for (int i = 0; i < G.n; ++i) axis_nodes[i] = G.coord(i);
    const Grid1D line(axis_nodes, GridKind::UniformDyadic, false);
    std::vector<double> cur = f.values, buf(G.n);
    for (int ax = 0; ax < G.d; ++ax) {
        if (alpha[ax] == 0) continue;
        std::size_t stride = 1;
        for (int b = ax + 1; b < G.d; ++b) stride *= static_cast<std::size_t>(G.n);
        const std::size_t total = cur.size();
        for (std::size_t base = 0; base < total; ++base) {
            if ((base / stride) % static_cast<std::size_t>(G.n) != 0) continue;
            for (int i = 0; i < G.n; ++i) buf[i] = cur[base + i * stride];
            const auto dv = nth_derivative(line, buf, alpha[ax]);
            for (int i = 0; i < G.n; ++i) cur[base + i * stride] = dv[i];
        }
    }
    return cur;
}

std::vector<std::vector<int>> multi_indices(int d, int order) {
    std::vector<std::vector<int>> out;
    std::vector<int> a(d, 0);
    std::function<void(int, int)> rec = [&](int ax, int left) {
        if (ax == d - 1) {
            a[ax] = left;
            out.push_back(a);
            return;
        }
        for (int v = left; v >= 0; --v) {
            a[ax] = v;
            rec(ax + 1, left - v);
        }
    };
    rec(0, order);
    return out;
}

AtomReport validate_spL_atom(const GridFunction& a, std::span<const double> center, double radius,
                             const AtomSpec& spec, double rel_tol) {
    const auto& G = a.grid;
    const int d = G.d;
    if (static_cast<int>(center.size()) != d) throw InvalidDimension("atom center dimension mismatch");
    AtomReport rep;
    const double r = 2 * radius;
    const double allowed = radius + 0.5 * r;
    std::vector<double> x(d);
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        if (a.values[i] == 0.0) continue;
        G.point(i, x);
        const double dist = std::sqrt(dist2(x, center));
        if (dist > allowed) rep.support_excess = std::max(rep.support_excess, dist - allowed);
    }
    rep.support_ok = rep.support_excess == 0;
    const double dp = spec.flavor == AtomFlavor::SpLM ? d * inv(spec.p) : 0.0;
    for (int n = 0; n <= spec.L; ++n) {
        const double bound = spec.flavor == AtomFlavor::SpLM ? std::pow(r, spec.s - n - dp) : 1.0;
        double worst = 0;
        for (const auto& alpha : multi_indices(d, n)) {
            const auto D = n == 0 ? a.values : tensor_partial(a, alpha);
            double m = 0;
            for (double v : D) m = std::max(m, std::abs(v));
            worst = std::max(worst, m / bound);
        }
        rep.derivative_ratio.push_back(worst);
        if (worst > 1 + rel_tol && rep.worst_order < 0) rep.worst_order = n;
    }
    if (spec.flavor == AtomFlavor::SpLM && spec.M >= 0) {
        rep.moments_checked = true;
        rep.moment_tol = 1e-6 * std::pow(r, spec.s - dp) * ball_volume(d) * std::pow(radius, d);
        const double cell = std::pow(G.h, d);
        for (int n = 0; n <= spec.M; ++n)
            for (const auto& alpha : multi_indices(d, n)) {
                double mom = 0;
                for (std::size_t i = 0; i < a.values.size(); ++i) {
                    if (a.values[i] == 0.0) continue;
                    G.point(i, x);
                    double mono = 1;
                    for (int ax = 0; ax < d; ++ax) mono *= std::pow(x[ax] - center[ax], alpha[ax]);
                    mom += a.values[i] * mono;
                }
                rep.moment_max = std::max(rep.moment_max, std::abs(mom * cell));
            }
    }
    rep.ok = rep.support_ok && rep.worst_order < 0 && (!rep.moments_checked || rep.moment_max <= rep.moment_tol);
    return rep;
}

std::function<double(std::span<const double>)> template_spL_atom(int d, std::vector<double> center, double radius,
                                                                 const AtomSpec& spec) {
    if (spec.M > 1) throw ConstructionError("template atoms carry at most one vanishing moment order");
    if (static_cast<int>(center.size()) != d) throw InvalidDimension("atom center dimension mismatch");
    const bool zero_mean = spec.M >= 0;
    const double two_d = std::ldexp(1.0, d);
    auto shape = [=](std::span<const double> x) {
        const double rho = std::sqrt(dist2(x, center)) / radius;
        double v = bump(rho);
        if (zero_mean) v -= two_d * bump(2 * rho);
        return v;
    };
    // measure the derivative sups of the unnormalized shape on a fine grid
    const int n = d == 2 ? 161 : 61;
    auto shifted = [&](std::span<const double> y) {
        std::vector<double> z(d);
        for (int i = 0; i < d; ++i) z[i] = y[i] + center[i];
        return shape(z);
    };
    const auto G = sample_tensor(d, n, -radius, radius, shifted);
    const double r = 2 * radius;
    const double dp = spec.flavor == AtomFlavor::SpLM ? d * inv(spec.p) : 0.0;
    double amp = INFINITY;
    for (int k = 0; k <= spec.L; ++k) {
        const double bound = spec.flavor == AtomFlavor::SpLM ? std::pow(r, spec.s - k - dp) : 1.0;
        for (const auto& alpha : multi_indices(d, k)) {
            const auto D = k == 0 ? G.values : tensor_partial(G, alpha);
            double m = 0;
            for (double v : D) m = std::max(m, std::abs(v));
            if (m > 0) amp = std::min(amp, bound / m);
        }
    }
    amp *= 0.7;
    return [shape, amp](std::span<const double> x) { return amp * shape(x); };
}

// ---------------------------------------------------------------- even atoms

EvenInterval EvenInterval::make_centered(double a) {
    if (!(a > 0)) throw InvalidInput("centered interval needs a > 0");
    return {a, 0, true};
}

EvenInterval EvenInterval::make_pair(double a, double b) {
    if (!(a > 0) || !(b > a)) throw InvalidInput("interval pair needs 0 < a < b");
    return {a, b, false};
}

EvenInterval EvenInterval::for_index(int j, int k) {
    const double h = std::ldexp(1.0, -j);
    return k == 0 ? make_centered(h) : make_pair(k * h, (k + 1) * h);
}

double EvenInterval::length() const { return centered ? 2 * a : b - a; }

std::pair<double, double> EvenInterval::window() const {
    if (centered) return {0.0, 1.5 * a};
    return {std::max(0.0, (3 * a - b) / 2), (3 * b - a) / 2};
}

EvenAtomReport validate_even_atom(const RadialProfile& g, const EvenInterval& I, int L, double bound_constant,
                                  double rel_tol) {
    EvenAtomReport rep;
    rep.bound_constant = bound_constant;
    const auto [lo, hi] = I.window();
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (g.value(i) == 0.0) continue;
        const double r = std::abs(g.t(i));
        double ex = 0;
        if (r > hi) ex = r - hi;
        if (!I.centered && r < lo) ex = lo - r;
        rep.support_excess = std::max(rep.support_excess, ex);
    }
    rep.support_ok = rep.support_excess == 0;
    const double len = I.length();
    double worst = -1;
    for (int n = 0; n <= L; ++n) {
        const auto D = nth_derivative(g.grid(), g.values(), n);
        double m = 0;
        for (double v : D) m = std::max(m, std::abs(v));
        const double ratio = m / (bound_constant * std::pow(len, -n));
        rep.derivative_ratio.push_back(ratio);
        if (ratio > worst) {
            worst = ratio;
            rep.worst_order = n;
        }
        if (ratio > 1 + rel_tol && rep.first_violation < 0) rep.first_violation = n;
    }
    rep.ok = rep.support_ok && rep.first_violation < 0;
    return rep;
}

namespace {

// bump width and amplitude of the template at (j, k)
struct TemplateShape {
    double center, width, amp;
};

TemplateShape template_shape(int j, int k, int L) {
    const double h = std::ldexp(1.0, -j);
    const auto I = EvenInterval::for_index(j, k);
    const double width = k == 0 ? 1.5 * h : h;
    double amp = INFINITY;
    for (int n = 0; n <= L; ++n) amp = std::min(amp, std::pow(width / I.length(), n) / bump_derivative_sup(n));
    return {k == 0 ? 0.0 : (k + 0.5) * h, width, 0.95 * amp};
}

}  // namespace

double template_even_atom(double t, int j, int k, int L) { return template_even_atom_derivative(t, j, k, L, 0); }

double template_even_atom_derivative(double t, int j, int k, int L, int n) {
    if (j < 0 || k < 0 || L < 0) throw InvalidInput("template atom indices must be >= 0");
    const auto s = template_shape(j, k, L);
    if (s.center == 0.0) return s.amp * bump_derivative(t / s.width, n) * std::pow(s.width, -n);
    const double u = (std::abs(t) - s.center) / s.width;
    double v = s.amp * bump_derivative(u, n) * std::pow(s.width, -n);
    if (t < 0 && (n % 2 == 1)) v = -v;
    return v;
}

RadialProfile template_even_atom(const Grid1D& grid, int j, int k, int L) {
    const auto s = template_shape(j, k, L);
    return RadialProfile::sample(grid, [&](double t) { return s.amp * bump((t - s.center) / s.width); });
}

}  // namespace radialfs

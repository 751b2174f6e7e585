#include "radialfs/bumps.hpp"

#include <array>
#include <cmath>
#include <mutex>

#include "radialfs/errors.hpp"

namespace radialfs {

namespace {

using Poly = std::vector<double>;

Poly deriv(const Poly& p) {
    if (p.size() <= 1) return {0.0};
    Poly out(p.size() - 1);
    for (std::size_t i = 1; i < p.size(); ++i) out[i - 1] = p[i] * static_cast<double>(i);
    return out;
}

Poly mul(const Poly& a, const Poly& b) {
    Poly out(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < b.size(); ++k) out[i + k] += a[i] * b[k];
    return out;
}

Poly add(Poly a, const Poly& b) {
    if (b.size() > a.size()) a.resize(b.size(), 0.0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
    return a;
}

double eval(const Poly& p, double u) {
    double r = 0;
    for (std::size_t i = p.size(); i-- > 0;) r = r * u + p[i];
    return r;
}

constexpr int kMaxOrder = 10;

// bump^{(n)} = P_n(u) (1-u^2)^{-2n} bump(u)
const std::vector<Poly>& polys() {
    static const std::vector<Poly> ps = [] {
        std::vector<Poly> v{{1.0}};
        const Poly one_minus_u2{1.0, 0.0, -1.0};
        const Poly sq = mul(one_minus_u2, one_minus_u2);
        for (int n = 0; n < kMaxOrder; ++n) {
            const Poly& P = v.back();
            Poly a = mul(deriv(P), sq);
            Poly b = mul(mul(Poly{0.0, 4.0 * n}, one_minus_u2), P);
            Poly c = mul(Poly{0.0, -2.0}, P);
            v.push_back(add(add(a, b), c));
        }
        return v;
    }();
    return ps;
}

}  // namespace

double bump(double u) {
    const double a = 1.0 - u * u;
    return a > 0 ? std::exp(-1.0 / a) : 0.0;
}

double bump_derivative(double u, int n) {
    if (n < 0 || n > kMaxOrder) throw InvalidInput("bump derivative order out of range");
    const double a = 1.0 - u * u;
    if (!(a > 0)) return 0.0;
    const double b = std::exp(-1.0 / a);
    if (b == 0.0) return 0.0;
    return eval(polys()[n], u) * std::pow(a, -2.0 * n) * b;
}

double bump_derivative_sup(int n) {
    static std::array<double, kMaxOrder + 1> cache{};
    static std::once_flag once;
    std::call_once(once, [] {
        const int N = 200000;
        for (int k = 0; k <= kMaxOrder; ++k) {
            double m = 0;
            for (int i = 1; i < N; ++i) m = std::max(m, std::abs(bump_derivative(-1.0 + 2.0 * i / N, k)));
            cache[k] = m;
        }
    });
    if (n < 0 || n > kMaxOrder) throw InvalidInput("bump derivative order out of range");
    return cache[n];
}

double smooth_step(double u) {
    if (u <= 0) return 0.0;
    if (u >= 1) return 1.0;
    const double a = std::exp(-1.0 / u), b = std::exp(-1.0 / (1.0 - u));
    return a / (a + b);
}

double psi_cutoff(double t) { return smooth_step((1.5 - std::abs(t)) / 0.5); }

double ring_bump(double u) {
    const double v = (std::abs(u) - 1.25) / 0.75;
    const double a = 1.0 - v * v;
    if (!(a > 0)) return 0.0;
    return std::exp(-1.0 / a + 9.0 / 8.0);
}

}  // namespace radialfs

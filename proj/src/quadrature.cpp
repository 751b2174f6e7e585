#include "quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace radialfs::detail {

const GaussRule& gauss_legendre(int n) {
    static std::mutex mu;
    static std::map<int, GaussRule> cache;
    std::lock_guard lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    GaussRule r;
    r.x.resize(n);
    r.w.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) p0 = 1;
            dp = n * (x * p1 - p0) / (x * x - 1);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        r.x[i] = x;
        r.w[i] = 2 / ((1 - x * x) * dp * dp);
    }
    return cache.emplace(n, std::move(r)).first->second;
}

double integrate(const std::function<double(double)>& f, double a, double b, int panels, int order) {
    if (!(b > a)) return 0.0;
    const auto& g = gauss_legendre(order);
    const double h = (b - a) / panels;
    double total = 0;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * h, mid = lo + 0.5 * h;
        double s = 0;
        for (std::size_t i = 0; i < g.x.size(); ++i) s += g.w[i] * f(mid + 0.5 * h * g.x[i]);
        total += 0.5 * h * s;
    }
    return total;
}

}  // namespace radialfs::detail

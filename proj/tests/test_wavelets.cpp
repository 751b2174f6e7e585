#include <cmath>
#include <numeric>

#include "doctest.h"
#include "radialfs/errors.hpp"
#include "radialfs/wavelets.hpp"

using namespace radialfs;

namespace {

// trapezoid over the dyadic table, step 2^-10
template <class F>
double table_integral(const Wavelet1D& w, F f) {
    const double h = std::ldexp(1.0, -Wavelet1D::kCascadeLevels);
    const auto& phi = w.phi_table();
    double s = 0;
    for (std::size_t i = 0; i < phi.size(); ++i) s += f(i * h) * ((i == 0 || i + 1 == phi.size()) ? 0.5 : 1.0);
    return s * h;
}

}  // namespace

TEST_CASE("filter identities") {
    for (int N = 2; N <= 8; ++N) {
        const auto& h = Wavelet1D::daubechies(N).filter();
        CHECK(h.size() == static_cast<std::size_t>(2 * N));
        CHECK(std::accumulate(h.begin(), h.end(), 0.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-13));
        for (int m = 0; m < N; ++m) {
            double s = 0;
            for (std::size_t k = 0; k + 2 * m < h.size(); ++k) s += h[k] * h[k + 2 * m];
            CHECK(s == doctest::Approx(m == 0 ? 1.0 : 0.0).scale(1).epsilon(1e-13));
        }
        // vanishing moments of the high-pass filter
        for (int n = 0; n < N; ++n) {
            double s = 0;
            for (std::size_t k = 0; k < h.size(); ++k) s += ((k % 2) ? -1.0 : 1.0) * std::pow(static_cast<double>(k), n) * h[k];
            CHECK(std::abs(s) < 1e-9 * std::pow(2.0 * N, n));
        }
    }
    CHECK_THROWS_AS(Wavelet1D::daubechies(1), InvalidInput);
    CHECK_THROWS_AS(Wavelet1D::daubechies(9), InvalidInput);
}

TEST_CASE("scaling function and wavelet") {
    for (int N : {3, 6}) {
        const auto& w = Wavelet1D::daubechies(N);
        CHECK(w.support_length() == 2 * N - 1);
        CHECK(table_integral(w, [&](double x) { return w.phi(x); }) == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(table_integral(w, [&](double x) { return w.phi(x) * w.phi(x); }) == doctest::Approx(1.0).epsilon(1e-4));
        CHECK(std::abs(table_integral(w, [&](double x) { return w.phi(x) * w.phi(x - 1); })) < 1e-4);
        CHECK(table_integral(w, [&](double x) { return w.psi(x) * w.psi(x); }) == doctest::Approx(1.0).epsilon(1e-4));
        CHECK(std::abs(table_integral(w, [&](double x) { return w.phi(x) * w.psi(x); })) < 1e-4);
        for (int n = 0; n < N; ++n)
            CHECK(std::abs(table_integral(w, [&](double x) { return w.psi(x) * std::pow(x, n); })) <
                  1e-5 * std::pow(2.0 * N, n));
        CHECK(w.phi(-0.5) == 0);
        CHECK(w.psi(2 * N) == 0);
        // partition of unity of the integer translates
        for (double x : {0.1, 0.37, 0.8}) {
            double s = 0;
            for (int k = -2 * N; k <= 2 * N; ++k) s += w.phi(x + k);
            CHECK(s == doctest::Approx(1.0).epsilon(1e-6));
        }
    }
}

TEST_CASE("tensor wavelets") {
    const auto& w = Wavelet1D::daubechies(3);
    const std::vector<int> k{1, 0};
    const std::vector<double> x{0.3, 0.2};
    // generator 1: psi in the first coordinate
    const double v = tensor_wavelet(w, 1, 2, k, x);
    CHECK(v == doctest::Approx(4 * w.psi(4 * 0.3 - 1) * w.phi(4 * 0.2)));
    const double v2 = tensor_wavelet(w, 2, 2, k, x);
    CHECK(v2 == doctest::Approx(4 * w.phi(4 * 0.3 - 1) * w.psi(4 * 0.2)));
}

TEST_CASE("spherical surface measure coefficients, d = 2") {
    SphericalMeanOptions opt;
    const auto levels = spherical_mean_wavelet_coeffs(2, 1.0, 4, opt);
    REQUIRE(levels.size() == 5);
    const auto& w = Wavelet1D::daubechies(opt.N);
    for (const auto& L : levels) {
        CHECK(L.error_estimate <= opt.rel_tol);
        CHECK(L.max_abs <= spherical_coefficient_bound(2, L.j, w));
        CHECK(L.scaled_sum <= 3 * levels[0].scaled_sum);
    }
    // non-vanishing counts grow like 2^j
    for (std::size_t j = 1; j < levels.size(); ++j) {
        const double r = static_cast<double>(levels[j].nonvanishing) / levels[j - 1].nonvanishing;
        CHECK(r >= 1.0);
        CHECK(r <= 4.0);
    }
    CHECK_THROWS(spherical_mean_wavelet_coeffs(4, 1.0, 1, opt));
}

#include <cmath>

#include "doctest.h"
#include "radialfs/bumps.hpp"
#include "radialfs/errors.hpp"
#include "radialfs/norms.hpp"
#include "radialfs/spaces.hpp"
#include "radialfs/test_functions.hpp"

using namespace radialfs;

TEST_CASE("bump values and derivatives") {
    CHECK(bump(0) == doctest::Approx(std::exp(-1.0)));
    CHECK(bump(1) == 0);
    CHECK(bump(-1.5) == 0);
    // mpmath at 30 digits, u = 0.3
    const double ref[] = {-0.24144698260322942, -0.94827444723250390, -1.4989783639714991, -5.9051869358847851};
    for (int n = 1; n <= 4; ++n) CHECK(bump_derivative(0.3, n) == doctest::Approx(ref[n - 1]).epsilon(1e-12));
    CHECK(bump_derivative(-0.3, 1) == doctest::Approx(-ref[0]).epsilon(1e-12));
    CHECK(bump_derivative(1.2, 3) == 0);
}

TEST_CASE("bump derivative suprema") {
    CHECK(bump_derivative_sup(0) == doctest::Approx(0.36787944117144232).epsilon(1e-9));
    CHECK(bump_derivative_sup(1) == doctest::Approx(0.79842975183359954).epsilon(1e-6));
    CHECK(bump_derivative_sup(2) == doctest::Approx(7.7497049416941454).epsilon(1e-6));
    CHECK(bump_derivative_sup(3) == doctest::Approx(186.39992131882830).epsilon(1e-6));
}

TEST_CASE("smooth step and cutoff") {
    CHECK(smooth_step(-1) == 0);
    CHECK(smooth_step(0.5) == doctest::Approx(0.5));
    CHECK(smooth_step(2) == 1);
    for (double u = 0.01; u < 1; u += 0.01) CHECK(smooth_step(u) + smooth_step(1 - u) == doctest::Approx(1.0));
    CHECK(psi_cutoff(0.9) == 1);
    CHECK(psi_cutoff(-1.0) == 1);
    CHECK(psi_cutoff(1.5) == 0);
    CHECK(psi_cutoff(1.25) == doctest::Approx(0.5));
}

TEST_CASE("ring template") {
    CHECK(ring_bump(1) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(ring_bump(-1) == ring_bump(1));
    CHECK(ring_bump(1.25) == doctest::Approx(std::exp(0.125)));
    CHECK(ring_bump(0.5) == 0);
    CHECK(ring_bump(2) == 0);
    CHECK(ring_bump(0.2) == 0);
}

TEST_CASE("f_{j,lambda} value and support") {
    for (int j : {1, 3, 6})
        for (double lambda : {3.0, 16.0, 40.0}) {
            const auto f = make_f_j_lambda(j, lambda);
            const double s = std::ldexp(1.0, -j);
            CHECK(f((1 + lambda) * s) == doctest::Approx(1.0).epsilon(1e-14));
            CHECK(f(-(1 + lambda) * s) == doctest::Approx(1.0).epsilon(1e-14));
            CHECK(f.support_lo == doctest::Approx((lambda - 2) * s));
            CHECK(f.support_hi == doctest::Approx((lambda + 2) * s));
            CHECK(f((lambda - 2) * s) == 0);
            CHECK(f((lambda + 2) * s) == 0);
            CHECK(f((lambda - 1.9) * s) > 0);
        }
}

TEST_CASE("f_{j,lambda} weighted norm from the template integral") {
    // ||f_{j,lambda}||^2 (d = 2, p = 2) = 2^{1-2j} lambda A for lambda > 2, A = int_R ring^2
    const double A = 1.8940289370944903;
    for (int j : {3, 5})
        for (double lambda : {4.0, 16.0}) {
            const auto f = make_f_j_lambda(j, lambda);
            const auto g = Grid1D::uniform(std::ldexp(1.0, -j) / 256, (lambda + 3) * std::ldexp(1.0, -j));
            const double exact = std::sqrt(std::ldexp(1.0, 1 - 2 * j) * lambda * A);
            CHECK(weighted_lp_norm(f.sample(g), 2.0, 2) == doctest::Approx(exact).epsilon(1e-9));
        }
}

TEST_CASE("singular family f_alpha") {
    const auto f = make_f_alpha(0.25, 2);
    CHECK(f(1.5) == doctest::Approx(ring_bump(1.5) * std::pow(0.5, -0.25)));
    CHECK(f.singular_radii.size() == 1);
    CHECK(f.singular_radii[0] == 1.0);
    CHECK_FALSE(f.asymptotics.empty());
    // a grid with a node on |t| = 1 is refused, the safe grid is accepted
    CHECK_THROWS(f.sample(Grid1D::uniform(0.25, 3)));
    CHECK_NOTHROW(f.sample(safe_grid(f, 0.25, 3)));
}

TEST_CASE("f_alpha norm converges under refinement when alpha p < 1") {
    // the integrand behaves like |t-1|^{-alpha p}, so the error decays like h^{1 - alpha p}:
    // a factor 4 in h halves the successive differences
    const auto f = make_f_alpha(0.25, 2);
    std::vector<double> v;
    for (int m = 6; m <= 14; m += 2) v.push_back(weighted_lp_norm(f.sample(safe_grid(f, std::ldexp(1.0, -m), 3)), 2.0, 2));
    for (std::size_t i = 2; i < v.size(); ++i) {
        const double rate = std::abs(v[i] - v[i - 1]) / std::abs(v[i - 1] - v[i - 2]);
        CHECK(rate == doctest::Approx(0.5).epsilon(0.2));
    }
}

TEST_CASE("Phi_alpha") {
    for (double a : {0.5, 1.0, 2.5}) {
        const auto f = make_Phi_alpha(a);
        CHECK(f(0) == 1);
        CHECK(f(1) == 0);
        CHECK(f(0.5) == doctest::Approx(std::pow(0.75, a)));
    }
}

TEST_CASE("f_{alpha,sigma} membership") {
    CHECK(f_alpha_sigma_member(0, 1, 1));
    CHECK(f_alpha_sigma_member(1, 0, kInf));
    CHECK_FALSE(f_alpha_sigma_member(1, 0, 2));
}

TEST_CASE("family descriptors round trip") {
    for (const auto& f : {make_f_j_lambda(3, 5), make_f_alpha(0.25, 2), make_Phi_alpha(1.5), make_psi_cutoff(),
                          make_f_alpha_sigma(1, 0), make_blowup_witness(0.75, 2, 2)}) {
        const auto g = parse_family(f.descriptor());
        CHECK(g.descriptor() == f.descriptor());
        for (double t : {0.01, 0.3, 0.77, 1.6, 2.4}) CHECK(g(t) == f(t));
    }
    CHECK_THROWS(parse_family("no_such_family()"));
}

TEST_CASE("blow-up witness") {
    const auto f = make_blowup_witness(0.75, 2, 2);
    for (double t : {0.001, 0.1, 0.9}) CHECK(f(t) == doctest::Approx(std::pow(t, -0.25)));
    CHECK(f(2) == 0);
}

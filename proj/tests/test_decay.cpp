#include <cmath>

#include "doctest.h"
#include "radialfs/bumps.hpp"
#include "radialfs/decay.hpp"
#include "radialfs/errors.hpp"

using namespace radialfs;

TEST_CASE("least squares recovers an exact line") {
    const std::vector<double> x{0, 1, 2, 3, 4};
    std::vector<double> y;
    for (double v : x) y.push_back(-0.75 * v + 2.5);
    const auto f = least_squares(x, y);
    CHECK(f.slope == doctest::Approx(-0.75).epsilon(1e-14));
    CHECK(f.intercept == doctest::Approx(2.5).epsilon(1e-14));
    CHECK(f.rms < 1e-14);
    CHECK(f.n == 5);
}

TEST_CASE("power-law tail") {
    const auto g = RadialProfile::sample(Grid1D::uniform(1.0 / 8, 40), [](double t) { return t == 0 ? 0.0 : 1 / (t * t); });
    const auto fit = fit_decay_exponent(g, {1, 2, 4, 8, 16});
    CHECK(fit.exponent == doctest::Approx(-2.0).epsilon(1e-6));
    CHECK(fit.residual < 1e-6);
}

TEST_CASE("bump train with m^{-1.5} weights") {
    auto f = [](double t) {
        double v = 0;
        for (int m = 1; m <= 80; ++m) v += std::pow(m, -1.5) * bump(t - m);
        return v;
    };
    const auto g = RadialProfile::sample(Grid1D::uniform(1.0 / 16, 80), f);
    CHECK(fit_decay_exponent(g, {2, 4, 8, 16, 32}).exponent == doctest::Approx(-1.5).epsilon(0.05 / 1.5));
}

TEST_CASE("undefined fits") {
    const auto g = RadialProfile::sample(Grid1D::uniform(1.0 / 8, 40), [](double t) { return bump(t); });
    CHECK_THROWS_AS(fit_decay_exponent(g, {1, 2, 4, 8}), UndefinedFit);
    CHECK_THROWS_AS(fit_decay_exponent(g, {1, 2, 4}), UndefinedFit);
    CHECK_THROWS_AS(fit_decay_exponent(g, {4, 2, 1, 0.5}), UndefinedFit);
}

TEST_CASE("lower-bound witnesses at infinity") {
    const SpaceParams a{0.5, 2, 1, 2, Scale::B};
    const auto rep = check_decay4_lower(a, {2, 3, 4, 5, 6});
    REQUIRE(rep.rows.size() == 5);
    for (const auto& r : rep.rows) CHECK(r.value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rep.band() <= 2.0);
}

TEST_CASE("blow-up at the origin") {
    const SpaceParams a{0.75, 2, 2, 2, Scale::B};
    const auto rep = check_decay2(a, {2, 3, 4, 5, 6, 7, 8});
    CHECK(rep.witness_max <= 1 + 1e-12);
    CHECK(rep.max_lower_identity_error <= 1e-12);
    CHECK(rep.origin_exponent == doctest::Approx(0.25).epsilon(0.05 / 0.25));
}

TEST_CASE("log-borderline") {
    const SpaceParams a{1, 2, kInf, 2, Scale::B};
    const auto rep = check_lim1(a, {"f_alpha_sigma(alpha=1,sigma=0)", "psi_cutoff()"}, {4, 6, 8, 10, 12});
    REQUIRE(rep.bands.size() == 2);
    CHECK(rep.bands[0] <= 2.0);
    // a bounded control loses the log factor: ratio strictly decreasing toward the origin
    double prev = INFINITY;
    for (const auto& r : rep.rows)
        if (r.witness == "psi_cutoff()") {
            CHECK(r.ratio < prev);
            prev = r.ratio;
        }
}

TEST_CASE("divergence witness outside U") {
    const SpaceParams a{0.25, 2, 2, 2, Scale::B};
    const auto rep = check_decay4_divergence(a, {1.0 / 16, 1.0 / 64, 1.0 / 256, 1.0 / 1024});
    CHECK(rep.diverging);
    CHECK_THROWS_AS(check_decay4_divergence({1, 2, 2, 2, Scale::B}, {0.1, 0.01}), OutOfHypothesis);
}

TEST_CASE("Strauss bump train") {
    const auto rep = strauss_bump_train(3, 2, {2, 3, 4, 5, 6});
    CHECK(-rep.fit.exponent == doctest::Approx(1.0).epsilon(0.1));
}

TEST_CASE("surrogate names") {
    CHECK(parse_surrogate("lp") == Surrogate::LittlewoodPaley);
    CHECK(parse_surrogate("atomic") == Surrogate::Atomic);
    CHECK_THROWS(parse_surrogate("wavelet"));
}

TEST_CASE("bump train corpus is seeded") {
    const auto grid = Grid1D::uniform(1.0 / 16, 40);
    const auto a = bump_train_corpus(9, 3, 2, grid, 16);
    const auto b = bump_train_corpus(9, 3, 2, grid, 16);
    const auto c = bump_train_corpus(10, 3, 2, grid, 16);
    REQUIRE(a.size() == 3);
    CHECK(a[1].values() == b[1].values());
    CHECK(a[1].values() != c[1].values());
}

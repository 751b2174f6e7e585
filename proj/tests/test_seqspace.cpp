#include <cmath>
#include <random>

#include "doctest.h"
#include "radialfs/errors.hpp"
#include "radialfs/grid.hpp"
#include "radialfs/norms.hpp"
#include "radialfs/seqspace.hpp"

using namespace radialfs;

namespace {

CoefficientGrid random_grid(std::mt19937_64& rng, int J, int K, double density) {
    std::uniform_real_distribution<double> u(-2, 2), coin(0, 1);
    CoefficientGrid c;
    for (int j = 0; j <= J; ++j)
        for (int k = 0; k <= K; ++k)
            if (coin(rng) < density) c.set(j, k, u(rng));
    if (c.empty()) c.set(0, 0, 1);
    return c;
}

// p = q: the inner function integrates cell by cell, 2 2^{-jd} ((k+1)^d - k^d) / d per cell
double f_pp_oracle(const CoefficientGrid& c, double s, double p, int d) {
    double acc = 0;
    for (int j = 0; j <= c.max_level(); ++j)
        for (int k = 0; k < c.level_size(j); ++k) {
            const double v = c.get(j, k);
            if (v == 0) continue;
            const double mu = 2 * std::ldexp(1.0, -j * d) * (std::pow(k + 1.0, d) - std::pow(k, d)) / d;
            acc += std::pow(std::pow(2.0, j * s) * std::abs(v), p) * mu;
        }
    return std::pow(acc, 1 / p);
}

}  // namespace

TEST_CASE("coefficient grid storage") {
    CoefficientGrid c;
    CHECK(c.empty());
    c.set(2, 3, 1.5);
    c.add(2, 3, 0.5);
    c.set(0, 0, -1);
    CHECK(c.get(2, 3) == 2.0);
    CHECK(c.get(1, 7) == 0.0);
    CHECK(c.get(9, 0) == 0.0);
    CHECK(c.max_level() == 2);
    CHECK(c.nonzeros() == 2);
    CHECK(c.truncated(1).max_level() <= 1);
    CHECK(c.scaled(3).get(2, 3) == 6.0);
    const auto back = CoefficientGrid::from_csv(c.to_csv());
    CHECK(back.get(2, 3) == 2.0);
    CHECK(back.get(0, 0) == -1.0);
    CHECK(back.nonzeros() == 2);
}

TEST_CASE("characteristic functions") {
    CHECK(chi_sharp(2, 1, 0.25) == 1);
    CHECK(chi_sharp(2, 1, -0.5) == 1);
    CHECK(chi_sharp(2, 1, 0.6) == 0);
    const double x[2] = {0.3, 0.4};
    CHECK(chi_tilde(1, 1, x) == 1);
    CHECK(chi_tilde(2, 2, x) == 1);
    CHECK(chi_tilde(2, 3, x) == 0);
    CHECK(chi_tilde(2, 1, x) == 0);
}

TEST_CASE("b norm closed forms") {
    CoefficientGrid one;
    one.set(0, 0, 1);
    for (double s : {-1.0, 0.0, 2.5})
        for (double p : {0.5, 1.0, 2.0})
            for (double q : {0.5, 2.0, kInf})
                for (int d : {1, 2, 3}) {
                    CHECK(seq_norm_bspqd(one, {s, p, q, d, Scale::B}) == doctest::Approx(1.0));
                    CHECK(seq_norm_bpqd(one, p, q, d) == doctest::Approx(1.0));
                }
    for (int K : {1, 4, 10}) {
        CoefficientGrid c;
        for (int k = 0; k < K; ++k) c.set(0, k, 1);
        CHECK(seq_norm_bspqd(c, {0.3, 1, 2, 2, Scale::B}) == doctest::Approx(K * (K + 1) / 2.0));
    }
    const double s = 1.3, p = 2;
    const int d = 2;
    CoefficientGrid two;
    for (int j : {0, 1}) two.set(j, 0, std::pow(2.0, -j * (s - d / p)));
    CHECK(seq_norm_bspqd(two, {s, p, 1, d, Scale::B}) == doctest::Approx(2.0));
    CHECK(seq_norm_bspqd(two, {s, p, kInf, d, Scale::B}) == doctest::Approx(1.0));
}

TEST_CASE("single entry b norm") {
    CoefficientGrid c;
    c.set(3, 5, -0.7);
    const double got = seq_norm_bspqd(c, {1.5, 2, 3, 3, Scale::B});
    CHECK(got == doctest::Approx(0.7 * 6.0));
}

TEST_CASE("b norm change of variables") {
    std::mt19937_64 rng(1);
    for (int t = 0; t < 20; ++t) {
        const auto c = random_grid(rng, 4, 8, 0.4);
        const SpaceParams a{0.7, 1.5, 0.8, 3, Scale::B};
        CoefficientGrid cp;
        for (int j = 0; j <= c.max_level(); ++j)
            for (int k = 0; k < c.level_size(j); ++k)
                if (c.get(j, k) != 0) cp.set(j, k, std::pow(2.0, j * (a.s - a.d / a.p)) * c.get(j, k));
        CHECK(seq_norm_bspqd(c, a) == doctest::Approx(seq_norm_bpqd(cp, a.p, a.q, a.d)).epsilon(1e-12));
    }
}

TEST_CASE("f norm closed forms") {
    CoefficientGrid one;
    one.set(0, 0, 1);
    CHECK(seq_norm_fspqd(one, {0, 1, 1, 2, Scale::F}) == doctest::Approx(1.0));
    CHECK(seq_norm_fpqd(one, 2, 2, 2) == doctest::Approx(std::sqrt(M_PI)));
    CHECK(seq_norm_fpqd(CoefficientGrid{}, 2, 2, 2) == 0.0);
    CHECK(seq_norm_fspqd(CoefficientGrid{}, {1, 2, 2, 2, Scale::F}) == 0.0);
}

TEST_CASE("f norm at p = q against disjoint-annulus summation") {
    std::mt19937_64 rng(2);
    for (int t = 0; t < 30; ++t) {
        const auto c = random_grid(rng, 5, 12, 0.25);
        for (int d : {1, 2, 3})
            for (double p : {1.0, 2.0}) {
                const double s = 0.5;
                CHECK(seq_norm_fspqd(c, {s, p, p, d, Scale::F}) == doctest::Approx(f_pp_oracle(c, s, p, d)).epsilon(1e-12));
            }
    }
}

TEST_CASE("b and f at p = q: exact per-term factor") {
    // f^p / b^p per term is (2/d)((k+1)^d - k^d)/(k+1)^{d-1}; at d = 1 this is the constant 2
    std::mt19937_64 rng(3);
    for (int t = 0; t < 20; ++t) {
        const auto c = random_grid(rng, 4, 10, 0.3);
        for (double p : {0.5, 1.0, 2.0}) {
            const double b = seq_norm_bspqd(c, {0.4, p, p, 1, Scale::B});
            const double f = seq_norm_fspqd(c, {0.4, p, p, 1, Scale::F});
            CHECK(f == doctest::Approx(std::pow(2.0, 1 / p) * b).epsilon(1e-12));
        }
        // for d >= 2 the factor lies in [2/d, 2], so f/b is bracketed
        for (int d : {2, 3}) {
            const double b = seq_norm_bspqd(c, {0.4, 2, 2, d, Scale::B});
            const double f = seq_norm_fspqd(c, {0.4, 2, 2, d, Scale::F});
            CHECK(f >= std::sqrt(2.0 / d) * b * (1 - 1e-12));
            CHECK(f <= std::sqrt(2.0) * b * (1 + 1e-12));
        }
    }
}

TEST_CASE("f norm: surface constant relation between the two normalizations") {
    std::mt19937_64 rng(4);
    for (int t = 0; t < 10; ++t) {
        const auto c = random_grid(rng, 3, 6, 0.5);
        for (int d : {2, 3}) {
            const double p = 1.5, q = 0.7;
            // fpqd uses the shell volume omega/d, the other 2/d, with weight d/p
            const double a = seq_norm_fpqd(c, p, q, d);
            const double b = seq_norm_fspqd(c, {d / p, p, q, d, Scale::F});
            CHECK(a == doctest::Approx(std::pow(sphere_area(d) / 2, 1 / p) * b).epsilon(1e-12));
        }
    }
}

TEST_CASE("grid evaluation converges to the exact f norm") {
    std::mt19937_64 rng(5);
    const auto c = random_grid(rng, 3, 6, 0.5);
    const SpaceParams a{0.5, 2, 1, 2, Scale::F};
    const double exact = seq_norm_fspqd(c, a);
    const double on_grid = seq_norm_fspqd(c, a, Grid1D::uniform(std::ldexp(1.0, -14), 8.0));
    CHECK(on_grid == doctest::Approx(exact).epsilon(1e-3));
    CHECK_THROWS_AS(seq_norm_fspqd(c, a, Grid1D::uniform(0.25, 8.0)), ResolutionError);
}

TEST_CASE("norm properties on random grids") {
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> lam(-3, 3);
    for (int t = 0; t < 40; ++t) {
        const auto c = random_grid(rng, 4, 10, 0.3);
        const auto e = random_grid(rng, 4, 10, 0.3);
        for (Scale sc : {Scale::B, Scale::F}) {
            const SpaceParams a{0.6, 1.5, 2, 2, sc};
            auto N = [&](const CoefficientGrid& g, const SpaceParams& x) {
                return sc == Scale::B ? seq_norm_bspqd(g, x) : seq_norm_fspqd(g, x);
            };
            const double l = lam(rng);
            CHECK(N(c.scaled(l), a) == doctest::Approx(std::abs(l) * N(c, a)).epsilon(1e-12));
            SpaceParams coarser = a;
            coarser.q = 4;
            CHECK(N(c, coarser) <= N(c, a) * (1 + 1e-12));
            SpaceParams smoother = a;
            smoother.s = 1.1;
            CHECK(N(c, a) <= N(c, smoother) * (1 + 1e-12));
            CoefficientGrid sum = c;
            for (int j = 0; j <= e.max_level(); ++j)
                for (int k = 0; k < e.level_size(j); ++k) sum.add(j, k, e.get(j, k));
            CHECK(N(sum, a) <= N(c, a) + N(e, a) + 1e-12);
            CHECK(N(c.truncated(2), a) <= N(c, a) * (1 + 1e-12));
        }
    }
}

#include <cmath>

#include "doctest.h"
#include "radialfs/bumps.hpp"
#include "radialfs/decomposition.hpp"
#include "radialfs/errors.hpp"
#include "radialfs/littlewood_paley.hpp"
#include "radialfs/norms.hpp"
#include "radialfs/test_functions.hpp"

using namespace radialfs;

TEST_CASE("dyadic windows sum to one") {
    for (int top : {1, 4, 9})
        for (double w = 0; w < std::ldexp(1.6, top); w += 0.037) {
            double s = 0;
            for (int j = 0; j <= top; ++j) {
                const double v = lp_window(j, top, w);
                CHECK(v >= -1e-15);
                s += v;
            }
            CHECK(s == doctest::Approx(1.0).epsilon(1e-14));
        }
    CHECK(lp_window(0, 5, 0.5) == 1.0);
    CHECK(lp_window(3, 5, 0.5) == 0.0);
    CHECK(lp_window(-1, 5, 0.5) == 0.0);
}

TEST_CASE("bands add back to the profile") {
    const auto g = RadialProfile::sample(Grid1D::uniform(1.0 / 128, 8), [](double t) { return std::exp(-t * t) * std::cos(3 * t); });
    const auto S = dyadic_bands(g);
    REQUIRE(!S.bands.empty());
    for (std::size_t i = 0; i < S.t.size(); ++i) {
        const double t = S.t[i];
        if (std::abs(t) > 7.5) continue;
        double sum = 0;
        for (const auto& b : S.bands) sum += b[i];
        CHECK(sum == doctest::Approx(std::exp(-t * t) * std::cos(3 * t)).scale(1).epsilon(1e-10));
    }
    CHECK(S.top_share < 1e-3);
}

TEST_CASE("Littlewood-Paley norms") {
    const auto grid = Grid1D::uniform(1.0 / 256, 16);
    const auto zero = RadialProfile::sample(grid, [](double) { return 0.0; });
    CHECK(lp_besov_norm_1d(zero, {1, 2, 2, 2, Scale::B}, true) == 0.0);
    const auto gauss = RadialProfile::sample(grid, [](double t) { return std::exp(-t * t); });
    double prev = 0;
    for (double s : {0.0, 0.5, 1.0, 2.0}) {
        const double v = lp_besov_norm_1d(gauss, {s, 2, 2, 2, Scale::B}, true);
        CHECK(std::isfinite(v));
        CHECK(v > prev);
        prev = v;
    }
    // band norms combine as an l_q sum of 2^{js} weighted entries
    const auto b = lp_band_norms(gauss, 2, 2);
    double acc = 0;
    for (std::size_t j = 0; j < b.norms.size(); ++j) acc += std::pow(std::ldexp(b.norms[j], static_cast<int>(j)), 2);
    CHECK(combine_band_norms(b, 1, 2) == doctest::Approx(std::sqrt(acc)));
}

TEST_CASE("radial Sobolev norms") {
    SUBCASE("first order, hat function, p = 1, d = 3") {
        const auto g = RadialProfile::sample(Grid1D::uniform(1.0 / 4096, 2), [](double t) { return std::max(0.0, 1 - t); });
        CHECK(sobolev_radial_norm_1(g, 1, 3) == doctest::Approx(5.0 / 6).epsilon(1e-3));
    }
    SUBCASE("first order, Gaussian, p = 2, d = 2") {
        const auto g = RadialProfile::sample(Grid1D::uniform(1.0 / 1024, 8), [](double t) { return std::exp(-t * t); });
        // mpmath at 30 digits
        CHECK(sobolev_radial_norm_1(g, 2, 2) == doctest::Approx(1.7071067811865475).epsilon(1e-5));
    }
    SUBCASE("zero") {
        const auto g = RadialProfile::sample(Grid1D::uniform(0.01, 1), [](double) { return 0.0; });
        CHECK(sobolev_radial_norm_1(g, 2, 2) == 0.0);
        CHECK(sobolev_radial_norm_2(g, 2, 2) == 0.0);
    }
    SUBCASE("iterated Laplacian, m = 1, r^2, d = 3") {
        const auto g = RadialProfile::sample(Grid1D::uniform(1.0 / 1024, 1), [](double t) { return t * t; });
        const double exact = std::sqrt(2.0 / 7) + 6 * std::sqrt(2.0 / 3);
        CHECK(sobolev_radial_norm_2m(g, 2, 3, 1) == doctest::Approx(exact).epsilon(1e-4));
        CHECK_THROWS_AS(sobolev_radial_norm_2m(g, 2, 3, 0), InvalidInput);
    }
    SUBCASE("iterated Laplacian, m = 2, (1-t^2)^4, d = 3") {
        const auto g = RadialProfile::sample(Grid1D::uniform(1.0 / 2048, 1.5),
                                             [](double t) { return t < 1 ? std::pow(1 - t * t, 4) : 0.0; });
        // sympy: Delta^2 g = 3024 t^4 - 3360 t^2 + 720 on the support
        CHECK(sobolev_radial_norm_2m(g, 2, 3, 2) == doctest::Approx(163.91571804883114).epsilon(1e-3));
    }
}

TEST_CASE("level partition sums to one") {
    for (int j : {0, 2, 5})
        for (double t = 0; t < 3; t += 0.0137) {
            double s = 0;
            for (int k = 0; k < (4 << j) + 2; ++k) s += level_partition(j, k, t);
            CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
        }
}

TEST_CASE("decomposition of the zero profile") {
    const auto g = RadialProfile::sample(Grid1D::uniform(1.0 / 256, 4), [](double) { return 0.0; }, 2);
    const auto dec = decompose_profile(g, AtomSpec{2, -1, 1, 2, AtomFlavor::Even1D});
    CHECK(dec.atoms.empty());
    CHECK(dec.residual_norm == 0.0);
    CHECK(dec.method == "zero");
}

TEST_CASE("a template atom is reproduced") {
    const auto grid = Grid1D::uniform(1.0 / 1024, 4);
    const auto g = template_even_atom(grid, 2, 3, 2).with_dim(2);
    const AtomSpec spec{2, -1, 1, 2, AtomFlavor::Even1D};
    const auto dec = decompose_profile(g, spec);
    CHECK(dec.meets_tolerance());
    const double main = dec.coefficients.get(2, 3);
    CHECK(main == doctest::Approx(1.0).epsilon(1e-3));
    double cross = 0;
    for (int j = 0; j <= dec.coefficients.max_level(); ++j)
        for (int k = 0; k < dec.coefficients.level_size(j); ++k)
            if (!(j == 2 && k == 3)) cross = std::max(cross, std::abs(dec.coefficients.get(j, k)));
    CHECK(cross < 1e-3 * std::abs(main));

    SUBCASE("one-term b norm") {
        const SpaceParams a{1, 2, 2, 2, Scale::B};
        const double c = 2.5;
        const double tb = tb_norm(g.scaled(c), a, spec);
        CHECK(tb == doctest::Approx(c * std::pow(2.0, 2 * (1 - 1.0)) * std::pow(4.0, 0.5)).epsilon(1e-3));
    }
}

TEST_CASE("band decomposition of the psi cutoff") {
    const auto grid = Grid1D::uniform(1.0 / 2048, 4);
    const auto g = RadialProfile::sample(grid, psi_cutoff, 2);
    DecompositionOptions opt;
    opt.try_templates = false;
    const AtomSpec spec{2, -1, 1, 2, AtomFlavor::Even1D};
    const auto dec = decompose_profile(g, spec, opt);
    CHECK(dec.method == "mollifier-bands");
    CHECK(dec.meets_tolerance());
    // residual falls by a factor >= 2 per level on average
    const auto& r = dec.level_residuals;
    REQUIRE(r.size() >= 6);
    const std::size_t last = std::min<std::size_t>(r.size() - 1, 8);
    if (r[last] > 0) CHECK(std::pow(r[0] / r[last], 1.0 / last) >= 2.0);
    // each band atom obeys the even-atom bounds
    int bad = 0, seen = 0;
    for (const auto& a : dec.atoms) {
        if (a.source != "band" || seen >= 60) continue;
        ++seen;
        const auto atom = band_atom(g, dec, a.j, a.k);
        if (!validate_even_atom(atom, EvenInterval::for_index(a.j, a.k), spec.L, 1.0, 1e-6).ok) ++bad;
    }
    CHECK(seen > 0);
    CHECK(bad == 0);
}

TEST_CASE("b norm of dilates follows the level shift") {
    const auto grid = Grid1D::uniform(1.0 / 4096, 4);
    const SpaceParams a{1, 2, 2, 1, Scale::B};
    const AtomSpec spec{2, -1, 1, 2, AtomFlavor::Even1D};
    auto base = [](double t) { return bump(t / 1.5); };
    const double n0 = tb_norm(RadialProfile::sample(grid, base, 1), a, spec);
    for (int m = 1; m <= 4; ++m) {
        const double lam = std::ldexp(1.0, -m);
        const double nm = tb_norm(RadialProfile::sample(grid, [&](double t) { return base(t / lam); }, 1), a, spec);
        const double expected = std::pow(2.0, m * (a.s - a.d / a.p));
        CHECK(nm / n0 >= expected / 2);
        CHECK(nm / n0 <= expected * 2);
    }
}

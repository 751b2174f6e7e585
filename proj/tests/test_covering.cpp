#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <random>

#include "doctest.h"
#include "radialfs/bumps.hpp"
#include "radialfs/covering.hpp"
#include "radialfs/errors.hpp"
#include "radialfs/grid.hpp"
#include "radialfs/profile.hpp"

using namespace radialfs;

namespace {

const AnnularCovering& cov2() {
    static const auto c = AnnularCovering::build(2, 4, 8);
    return c;
}
const AnnularCovering& cov3() {
    static const auto c = AnnularCovering::build(3, 3, 5);
    return c;
}

double axis_distance(const std::vector<double>& c) {
    double s = 0;
    for (std::size_t i = 1; i < c.size(); ++i) s += c[i] * c[i];
    return std::sqrt(s);
}

}  // namespace

TEST_CASE("annulus counts") {
    CHECK(cov2().count(0) == 1);
    for (double v : cov2().level0_centers(0)[0]) CHECK(v == 0);
    CHECK(cov2().count(5) <= 11);
    for (const auto& c : cov2().level0_centers(5)) CHECK(std::hypot(c[0], c[1]) == doctest::Approx(5.5));
    CHECK(AnnularCovering::radius(0) == 6);
    CHECK(AnnularCovering::radius(3) == doctest::Approx(0.75));
}

TEST_CASE("Monte-Carlo coverage, d = 3") {
    for (int j : {0, 2})
        for (int k : {1, 3, 5}) CHECK(cov3().coverage_distance(j, k, 10000, 99 + k) <= 6.0);
}

TEST_CASE("levels are dilates of level 0") {
    const auto c0 = cov2().center(0, 4, 2);
    const auto c3 = cov2().center(3, 4, 2);
    for (int i = 0; i < 2; ++i) CHECK(c3[i] == doctest::Approx(c0[i] / 8));
}

TEST_CASE("overlap is level independent") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-7, 7);
    for (int i = 0; i < 2000; ++i) {
        const double x[2] = {u(rng), u(rng)};
        const double y[3] = {0.5 * u(rng), 0.5 * u(rng), 0.5 * u(rng)};
        const int n2 = cov2().overlap(x, 0), n3 = cov3().overlap(y, 0);
        CHECK(n2 >= 1);
        for (int j = 1; j <= 3; ++j) {
            const double s = std::ldexp(1.0, -j);
            const double xj[2] = {x[0] * s, x[1] * s};
            const double yj[3] = {y[0] * s, y[1] * s, y[2] * s};
            CHECK(cov2().overlap(xj, j) == n2);
            CHECK(cov3().overlap(yj, j) == n3);
        }
    }
}

namespace {

int worst_overlap(int d, int samples) {
    const auto cov = AnnularCovering::build(d, 0, d == 2 ? 24 : 14);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1, 1);
    int worst = 0;
    for (int i = 0; i < samples; ++i) {
        std::vector<double> x(d);
        for (auto& c : x) c = u(rng) * (d == 2 ? 14 : 7);
        worst = std::max(worst, cov.overlap(x, 0));
    }
    return worst;
}

}  // namespace

TEST_CASE("overlap census at level 0") {
    // frozen from a 3e5-point census: 17 balls in the plane, 28 in space
    CHECK(worst_overlap(2, 20000) <= 17);
    CHECK(worst_overlap(3, 20000) <= 28);
}

TEST_CASE("overlap within 8 balls in the plane and 24 in space") {
    // the stated bound; balls of diameter 12 over annuli of width 1 exceed it
    CHECK(worst_overlap(2, 20000) <= 8);
    CHECK(worst_overlap(3, 20000) <= 24);
}

TEST_CASE("axis enumeration") {
    for (int k = 0; k <= cov2().max_k(); ++k) {
        const auto& cs = cov2().level0_centers(k);
        for (std::size_t l = cov2().axis_count(k); l < cs.size(); ++l)
            CHECK(axis_distance(cs[l]) >= 0.5 * AnnularCovering::radius(0));
    }
}

TEST_CASE("partition of unity") {
    PartitionOfUnity pu(cov2(), 2);
    for (int j : {0, 2, 4})
        for (int k : {0, 1, 3, 6}) {
            const double r = std::ldexp(k + 0.5, -j);
            const double x[2] = {r, 0};
            CHECK(pu.sum(x, j) == doctest::Approx(1.0).epsilon(1e-10));
            const double y[2] = {r * std::cos(0.7), r * std::sin(0.7)};
            CHECK(pu.sum(y, j) == doctest::Approx(1.0).epsilon(1e-10));
        }
    SUBCASE("single ball near the origin") {
        const double x[2] = {0.05, 0.0};
        const auto e = pu.evaluate(x, 0);
        double origin = 0;
        for (auto& en : e)
            if (en.k == 0) origin = en.value;
        CHECK(origin > 0);
        CHECK(pu.value(0, 0, 1, x) == doctest::Approx(origin));
    }
    SUBCASE("derivative bound scales with 2^j") {
        CHECK(pu.C_L() > 0);
        CHECK(pu.sampled_derivative_bound(3, 1, 400, 17) <= pu.C_L());
    }
}

TEST_CASE("atom admissibility") {
    AtomSpec a{3, -1, 1, 2, AtomFlavor::SpLM};
    CHECK(a.B_admissible(2));
    AtomSpec low{0, -1, 1, 2, AtomFlavor::SpLM};
    CHECK_FALSE(low.B_admissible(2));
    // p = 1/2, d = 2: sigma_p = 2 so s = 1 needs M >= 1
    AtomSpec moments{2, 0, 1, 0.5, AtomFlavor::SpLM};
    CHECK_FALSE(moments.B_admissible(2));
    moments.M = 1;
    CHECK(moments.B_admissible(2));
}

TEST_CASE("template (s,p) atoms validate, moments vanish") {
    const std::vector<double> c{0.0, 0.0};
    SUBCASE("plain bump skips the moment check") {
        AtomSpec spec{2, -1, 1, 2, AtomFlavor::SpLM};
        const auto f = template_spL_atom(2, c, 1.0, spec);
        const auto G = sample_tensor(2, 161, -2, 2, f);
        const auto rep = validate_spL_atom(G, c, 1.0, spec);
        CHECK(rep.ok);
        CHECK_FALSE(rep.moments_checked);
    }
    SUBCASE("one vanishing moment") {
        AtomSpec spec{2, 0, 1, 2, AtomFlavor::SpLM};
        const auto f = template_spL_atom(2, c, 1.0, spec);
        const auto G = sample_tensor(2, 161, -2, 2, f);
        const auto rep = validate_spL_atom(G, c, 1.0, spec);
        CHECK(rep.ok);
        CHECK(rep.moments_checked);
        // polar quadrature of the mean, panels split at the inner bump edge
        auto radial = [&](double r) {
            const double x[2] = {r, 0.0};
            return f(x) * r;
        };
        using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
        const double mass = GK::integrate(radial, 0.0, 0.5, 15, 1e-14) + GK::integrate(radial, 0.5, 1.0, 15, 1e-14);
        double scale = GK::integrate([&](double r) { return std::abs(radial(r)); }, 0.0, 1.0, 15, 1e-12);
        CHECK(std::abs(mass) <= 1e-8 * scale);
    }
    SUBCASE("zero function") {
        AtomSpec spec{2, 0, 1, 2, AtomFlavor::SpLM};
        const auto G = sample_tensor(2, 41, -2, 2, [](std::span<const double>) { return 0.0; });
        CHECK(validate_spL_atom(G, c, 1.0, spec).ok);
    }
}

TEST_CASE("even atoms") {
    const auto grid = Grid1D::uniform(1.0 / 512, 4);
    SUBCASE("scaled bump on [-1, 1]") {
        // sup |b^{(n)}| <= 2^{-n} after dividing by the largest scaled sup over n <= L
        for (int L : {1, 2}) {
            double amp = 1;
            for (int n = 0; n <= L; ++n) amp = std::min(amp, std::pow(2.0, -n) / bump_derivative_sup(n));
            const auto g = RadialProfile::sample(grid, [&](double t) { return amp * bump(t); });
            CHECK(validate_even_atom(g, EvenInterval::make_centered(1), L).ok);
            // dilated by 4, bounds not renormalized; the binding order fails first
            const auto narrow = RadialProfile::sample(grid, [&](double t) { return amp * bump(4 * t); });
            const auto rep = validate_even_atom(narrow, EvenInterval::make_centered(1), L);
            CHECK_FALSE(rep.ok);
            CHECK(rep.first_violation == L);
        }
    }
    SUBCASE("templates at (j, k)") {
        for (int j : {0, 2})
            for (int k : {0, 1, 4}) {
                const auto g = template_even_atom(grid, j, k, 2);
                CHECK(validate_even_atom(g, EvenInterval::for_index(j, k), 2).ok);
            }
    }
    SUBCASE("intervals") {
        const auto I = EvenInterval::for_index(2, 3);
        CHECK_FALSE(I.centered);
        CHECK(I.a == doctest::Approx(0.75));
        CHECK(I.b == doctest::Approx(1.0));
        CHECK(I.length() == doctest::Approx(0.25));
        CHECK(EvenInterval::for_index(2, 0).length() == doctest::Approx(0.5));
    }
}

TEST_CASE("tensor partials of a polynomial") {
    const auto G = sample_tensor(2, 81, -1, 1, [](std::span<const double> x) { return x[0] * x[0] * x[1]; });
    const int a[2] = {1, 1};
    const auto D = tensor_partial(G, a);
    std::vector<double> x(2);
    for (std::size_t i = 0; i < D.size(); i += 97) {
        G.grid.point(i, x);
        if (std::abs(x[0]) < 0.95 && std::abs(x[1]) < 0.95) CHECK(D[i] == doctest::Approx(2 * x[0]).scale(1));
    }
    CHECK(multi_indices(3, 2).size() == 6);
    CHECK_THROWS_AS(AnnularCovering::build(4, 1, 1), InvalidDimension);
}

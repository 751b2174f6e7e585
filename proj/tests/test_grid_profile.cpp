#include <cmath>
#include <numeric>

#include "doctest.h"
#include "radialfs/errors.hpp"
#include "radialfs/grid.hpp"
#include "radialfs/profile.hpp"

using namespace radialfs;

TEST_CASE("uniform grid is even, contains zero and mirrors exactly") {
    const auto g = Grid1D::uniform(0.125, 2.0);
    CHECK(g.size() == 33);
    CHECK(g.even());
    CHECK(g.is_uniform());
    CHECK(g.spacing() == doctest::Approx(0.125));
    CHECK(g[g.first_nonnegative()] == 0.0);
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(g[g.mirror(i)] == -g[i]);
}

TEST_CASE("offset grid avoids the origin") {
    const auto g = Grid1D::uniform_offset(0.25, 2.0);
    for (double t : g.nodes()) CHECK(t != 0.0);
    CHECK(g.even());
    CHECK(g[g.first_nonnegative()] == doctest::Approx(0.125));
}

TEST_CASE("trapezoid weights integrate affine functions exactly") {
    for (const auto& g : {Grid1D::uniform(0.1, 3.0), Grid1D::log_spaced(1e-3, 10.0, 50), Grid1D::composite(6, 0.05, 4.0)}) {
        const auto w = g.trapezoid_weights();
        double len = 0, first = 0;
        for (std::size_t i = 0; i < g.size(); ++i) {
            len += w[i];
            first += w[i] * (2.0 * g[i] + 1.0);
        }
        CHECK(len == doctest::Approx(g.back() - g.front()).epsilon(1e-12));
        CHECK(first == doctest::Approx(g.back() - g.front()).epsilon(1e-12));
    }
}

TEST_CASE("grid descriptors round trip") {
    const auto g = Grid1D::parse("uniform:h=0.25,T=2");
    CHECK(g.size() == 17);
    const auto c = Grid1D::parse("dyadic:J=5;uniform:h=0.1,T=3");
    CHECK(c.kind() == GridKind::Composite);
    CHECK(c.even());
    CHECK(Grid1D::parse(c.descriptor()).nodes() == c.nodes());
    CHECK_THROWS_AS(Grid1D::parse("spiral:h=1"), ConfigError);
}

TEST_CASE("non-uniform grid refuses a spacing") {
    CHECK_THROWS(Grid1D::log_spaced(0.01, 1.0, 10).spacing());
}

TEST_CASE("profile sampling is bitwise even") {
    const auto g = Grid1D::uniform(1.0 / 64, 3.0);
    const auto p = RadialProfile::sample(g, [](double t) { return std::sin(t) + t * t; });
    for (std::size_t i = 0; i < p.size(); ++i) CHECK(p.value(i) == p.value(g.mirror(i)));
}

TEST_CASE("profile constructor rejects odd data") {
    const auto g = Grid1D::uniform(0.5, 1.0);
    CHECK_THROWS_AS(RadialProfile(g, {-1, -0.5, 0, 0.5, 1}), EvennessViolation);
}

TEST_CASE("interpolation reproduces nodes and is zero outside") {
    const auto g = Grid1D::uniform(0.25, 2.0);
    const auto p = RadialProfile::sample(g, [](double t) { return 1.0 + t * t; });
    CHECK(p(0.5) == doctest::Approx(1.25));
    CHECK(p(-0.5) == doctest::Approx(1.25));
    CHECK(p(0.375) == doctest::Approx(0.5 * (1.0625 + 1.25)));
    CHECK(p.cubic(1.0) == doctest::Approx(2.0));
    CHECK(p(5.0) == 0.0);
    CHECK(p.at_node(0.75).value() == doctest::Approx(1.5625));
    CHECK_FALSE(p.at_node(0.3).has_value());
}

TEST_CASE("CSV round trip keeps every digit") {
    const auto g = Grid1D::uniform(0.1, 1.0);
    const auto p = RadialProfile::sample(g, [](double t) { return std::exp(-t) / 3.0; }, 3);
    const auto q = RadialProfile::from_csv(p.to_csv(), 3);
    CHECK(q.values() == p.values());
    CHECK(q.grid().nodes() == p.grid().nodes());
}

TEST_CASE("radial field evaluates the profile at |x|") {
    const auto g = Grid1D::uniform(1.0 / 128, 4.0);
    RadialField f(RadialProfile::sample(g, [](double t) { return std::exp(-t * t); }), 3, Interp::Cubic);
    const double x[3] = {0.3, -0.4, 1.2};
    CHECK(f(x) == doctest::Approx(std::exp(-(0.09 + 0.16 + 1.44))).epsilon(1e-6));
    CHECK(f.at_radius(1.3) == doctest::Approx(std::exp(-1.69)).epsilon(1e-6));
}

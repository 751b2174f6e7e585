#include <random>

#include "doctest.h"
#include "radialfs/errors.hpp"
#include "radialfs/spaces.hpp"

using namespace radialfs;

TEST_CASE("sigma thresholds") {
    CHECK(sigma_p(1, 5) == 0);
    CHECK(sigma_p(0.5, 2) == 2);
    CHECK(sigma_p(2.0 / 3, 3) == doctest::Approx(1.5));
    CHECK(sigma_pq(2, 2, 3) == 0);
    CHECK(sigma_pq(1, 0.5, 2) == 2);
    CHECK(sigma_pq(0.5, 1, 2) == 2);
    CHECK(sigma_p(kInf, 3) == 0);
    CHECK_THROWS_AS(sigma_p(0, 2), InvalidInput);
}

TEST_CASE("decay region U") {
    CHECK(in_U({1, 1, kInf, 2, Scale::F}));
    CHECK(in_U({0.5, 2, 1, 2, Scale::B}));
    CHECK_FALSE(in_U({0.5, 2, 2, 2, Scale::B}));
    // on the line s = 1/p the F scale needs p <= 1, whatever q
    CHECK_FALSE(in_U({0.5, 2, 0.5, 2, Scale::F}));
    CHECK(in_U({2, 0.5, 7, 2, Scale::F}));
}

TEST_CASE("boundedness") {
    CHECK(embeds_in_Linfty({2, 2, 2, 3, Scale::B}));
    CHECK(embeds_in_Linfty({1.5, 2, 1, 3, Scale::B}));
    CHECK_FALSE(embeds_in_Linfty({1.5, 2, 2, 3, Scale::F}));
}

TEST_CASE("trace into distributions") {
    CHECK(trace_lands_in_Sprime({1, 1, 1, 2, Scale::B}));
    CHECK_FALSE(trace_lands_in_Sprime({0.9, 1, 1, 2, Scale::B}));
    CHECK(trace_lands_in_Sprime({3, 0.5, 2, 2, Scale::F}));
    // below sigma_p the statement has no hypothesis to stand on
    CHECK(trace_lands_in_Sprime_tri({1, 0.5, 2, 2, Scale::B}) == Tri::OutOfHypothesis);
    CHECK_THROWS_AS(trace_lands_in_Sprime({1, 0.5, 2, 2, Scale::B}), OutOfHypothesis);
}

TEST_CASE("weighted L_p inside S'") {
    CHECK(weighted_Lp_in_Sprime(3, 2));
    CHECK_FALSE(weighted_Lp_in_Sprime(2, 2));
    CHECK_FALSE(weighted_Lp_in_Sprime(1, 3));
}

TEST_CASE("U_t membership") {
    CHECK(in_U_t(0, 1, 1));
    CHECK(in_U_t(1, 0, kInf));
    CHECK(in_U_t(0.5, 0.6, 2));
    CHECK_FALSE(in_U_t(0.5, 0.5, 2));
    CHECK_FALSE(in_U_t(1, 0, 2));
    CHECK(in_U_t(-0.1, -5, 1));
}

TEST_CASE("invalid parameters are rejected") {
    CHECK_THROWS_AS(in_U({1, 0, 2, 2, Scale::B}), InvalidInput);
    CHECK_THROWS_AS(in_U({1, 2, 2, 0, Scale::B}), InvalidDimension);
    CHECK_THROWS_AS(in_U({1, kInf, 2, 2, Scale::F}), InvalidInput);
}

TEST_CASE("predicates are monotone in s and nested") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> s_dist(-1, 4), ip_dist(0.05, 3), iq_dist(0, 2);
    for (int i = 0; i < 2000; ++i) {
        SpaceParams a{s_dist(rng), 1 / ip_dist(rng), 0, 1 + static_cast<int>(rng() % 4),
                      (rng() & 1) ? Scale::B : Scale::F};
        const double iq = iq_dist(rng);
        a.q = iq == 0 ? kInf : 1 / iq;
        SpaceParams higher = a;
        higher.s += 0.25;
        if (in_U(a)) CHECK(in_U(higher));
        if (embeds_in_Linfty(a)) {
            CHECK(embeds_in_Linfty(higher));
            CHECK(in_U(a));
        }
        // smaller q only helps on the B scale
        if (a.scale == Scale::B && in_U(a)) {
            SpaceParams finer = a;
            finer.q = a.q / 2;
            CHECK(in_U(finer));
        }
    }
}

TEST_CASE("region map") {
    const auto fig2 = make_region("fig2");
    auto at = [&](double ip, double s, Scale sc) { return fig2.classifier({s, 1 / ip, 2, 2, sc}); };
    CHECK(at(1, 1, Scale::F) == "decay");
    CHECK(at(2, 0.1, Scale::F) == "singular radial distributions");
    CHECK(at(1e-3, 0.5, Scale::F) == "decay");
    CHECK(at(0.5, 0.2, Scale::B) == "no decay");

    const auto cells = classification_map(fig2, 0, 2, -1, 3, 9, 2, 2, Scale::F);
    CHECK(cells.size() == 81);
    CHECK(cells.front().inv_p == doctest::Approx(0));
    CHECK(cells.front().s == doctest::Approx(-1));
    CHECK(cells.back().inv_p == doctest::Approx(2));
    CHECK(cells.back().s == doctest::Approx(3));
    const auto csv = raster_csv(cells);
    CHECK(csv.rfind("inv_p,s,label", 0) == 0);

    for (const auto& name : region_names()) CHECK_NOTHROW(make_region(name));
    CHECK_THROWS_AS(make_region("fig9"), ConfigError);
}

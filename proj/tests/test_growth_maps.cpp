#include <doctest.h>

#include <cmath>

#include "metapop/growth_maps.hpp"

using namespace metapop;

namespace {

std::vector<GrowthMap> catalog() {
    return {GrowthMap::ricker(50, 0.04),
            GrowthMap::ricker(2, 1),
            GrowthMap::hassell(0.9, 0.01, 1),
            GrowthMap::hassell(3, 0.5, 2.5),
            GrowthMap::generalised_beverton_holt(2, 1.5, 1),
            GrowthMap::generalised_beverton_holt(5, 2, 3),
            GrowthMap::logistic(3.7),
            GrowthMap::gamma_gauss(3)};
}

std::vector<double> grid(double lo, double hi, int n) {
    std::vector<double> g;
    for (int k = 0; k <= n; ++k) g.push_back(lo + (hi - lo) * k / n);
    return g;
}

}  // namespace

TEST_CASE("eval_f matches hand-evaluated closed forms") {
    CHECK(GrowthMap::ricker(50, 0.04).eval_f(0) == 0.0);
    CHECK(GrowthMap::hassell(0.9, 0.01, 1).eval_f(10) == doctest::Approx(0.9 * 10 / 1.1));
    CHECK(GrowthMap::gamma_gauss(3).eval_f(1) == doctest::Approx(3.0));
}

TEST_CASE("eval_g is regular at the origin") {
    CHECK(GrowthMap::ricker(50, 0.04).eval_g(0) == doctest::Approx(50));
    CHECK(GrowthMap::hassell(0.4, 0.01, 1).eval_g(0) == doctest::Approx(0.4));
    // g(0) = gamma e^{-1} for the Gaussian family
    CHECK(GrowthMap::gamma_gauss(3).eval_g(0) == doctest::Approx(3.0 / std::exp(1.0)));
}

TEST_CASE("f = g * x on a grid") {
    for (const auto& map : catalog())
        for (double x : grid(0, std::min(map.domain_max(), 50.0), 1000)) {
            if (x == 0.0) continue;
            CHECK(map.eval_f(x) ==
                  doctest::Approx(map.eval_g(x) * x).epsilon(1e-12));
        }
}

TEST_CASE("derivative_f agrees with central differences") {
    for (const auto& map : catalog()) {
        const double hi = std::min(map.domain_max(), 40.0);
        for (double x : grid(0.0, hi, 1000)) {
            const double h = 1e-6 * std::max(1.0, x);
            if (x - h < 0 || x + h > map.domain_max()) continue;
            const double fd = (map.eval_f(x + h) - map.eval_f(x - h)) / (2 * h);
            CHECK(map.derivative_f(x) ==
                  doctest::Approx(fd).epsilon(1e-6));
        }
    }
}

TEST_CASE("derivative at the origin equals g(0)") {
    for (const auto& map : catalog())
        CHECK(map.derivative_f(0) == doctest::Approx(map.g_at_zero()));
    CHECK(GrowthMap::gamma_gauss(3).derivative_f(1) == doctest::Approx(3.0));
    CHECK(GrowthMap::ricker(2, 1).derivative_f(1) == doctest::Approx(0.0));
}

TEST_CASE("upper_bound dominates f on a grid") {
    for (const auto& map : catalog()) {
        const double m = map.upper_bound();
        for (double x : grid(0, std::min(map.domain_max(), 200.0), 2000))
            CHECK(map.eval_f(x) <= m + 1e-12 * std::max(1.0, m));
    }
    CHECK(GrowthMap::ricker(50, 0.04).upper_bound() ==
          doctest::Approx(50 / (0.04 * std::exp(1.0))));
    CHECK(GrowthMap::logistic(4).upper_bound() == doctest::Approx(1.0));
}

TEST_CASE("GBH bound matches grid maximisation for c > 1") {
    const auto map = GrowthMap::generalised_beverton_holt(5, 2, 3);
    double best = 0;
    for (double x : grid(0, 50, 200000)) best = std::max(best, map.eval_f(x));
    CHECK(map.upper_bound() == doctest::Approx(best).epsilon(1e-8));
}

TEST_CASE("isolated fixed points") {
    auto fps = GrowthMap::ricker(50, 0.04).isolated_fixed_points();
    REQUIRE(fps.size() == 2);
    CHECK(fps[0].stability == FixedPointStability::Unstable);
    CHECK(fps[1].x == doctest::Approx(std::log(50.0) / 0.04));
    CHECK(fps[1].stability == FixedPointStability::Unstable);  // a > e

    fps = GrowthMap::hassell(0.4, 0.01, 1).isolated_fixed_points();
    REQUIRE(fps.size() == 1);
    CHECK(fps[0].stability == FixedPointStability::GAS);

    fps = GrowthMap::ricker(2, 1).isolated_fixed_points();
    REQUIRE(fps.size() == 2);
    CHECK(fps[1].x == doctest::Approx(std::log(2.0)));
    CHECK(fps[1].stability == FixedPointStability::LAS);  // 1 < a < e
}

TEST_CASE("positive fixed points satisfy f(x*) = x*") {
    for (const auto& map : catalog())
        for (const auto& fp : map.isolated_fixed_points())
            if (fp.x > 0) CHECK(std::abs(map.eval_f(fp.x) - fp.x) < 1e-10);
}

TEST_CASE("region classification") {
    CHECK(GrowthMap::ricker(5.94, 0.04).classify_region() == RegionClass::Source);
    CHECK(GrowthMap::hassell(0.68, 0.01, 1).classify_region() == RegionClass::Sink);
    CHECK(GrowthMap::ricker(1.0, 0.04).classify_region() == RegionClass::Indeterminate);
    // GammaGauss: sink certified by the maximum gamma, source by g(0)
    CHECK(GrowthMap::gamma_gauss(0.9).classify_region() == RegionClass::Sink);
    CHECK(GrowthMap::gamma_gauss(3).classify_region() == RegionClass::Source);
    CHECK(GrowthMap::gamma_gauss(2).classify_region() == RegionClass::Indeterminate);
}

TEST_CASE("sinks drive isolated orbits to extinction") {
    for (const auto& map : {GrowthMap::ricker(0.8, 1.0), GrowthMap::hassell(0.68, 0.01, 1)}) {
        REQUIRE(map.classify_region() == RegionClass::Sink);
        for (double x0 : {0.1, 1.0, 10.0}) {
            double x = x0;
            for (int t = 0; t < 10000; ++t) x = map.eval_f(x);
            CHECK(x < 1e-6);
        }
    }
}

TEST_CASE("class membership report") {
    auto g = grid(0, 3, 300);
    const auto rep = check_class_membership(GrowthMap::gamma_gauss(3), g);
    CHECK(rep.member);
    // f'' changes sign at 1/sqrt(2): roots of 2x^3 - 4x^2 - x + 2
    CHECK(rep.convex_prefix_end == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(0.05));

    CHECK(check_class_membership(GrowthMap::ricker(2, 1), grid(0, 10, 1000)).member);
    const auto mono = check_class_membership(GrowthMap::hassell(0.5, 1, 1), grid(0, 10, 1000));
    CHECK(mono.member);
    CHECK(mono.f_monotone_increasing_on_grid);
}

TEST_CASE("domain errors") {
    CHECK_THROWS_AS(GrowthMap::ricker(2, 1).eval_f(-1), DomainError);
    CHECK_THROWS_AS(GrowthMap::logistic(2).eval_f(1.5), DomainError);
    CHECK_NOTHROW(GrowthMap::logistic(2).eval_f(1.0));
    CHECK_THROWS_AS(GrowthMap::ricker(-1, 1), ConfigError);
    CHECK_THROWS_AS(GrowthMap::hassell(1, 1, 0.5), ConfigError);
}

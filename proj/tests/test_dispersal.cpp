#include <doctest.h>

#include <cmath>
#include <random>

#include "metapop/dispersal.hpp"

using namespace metapop;

TEST_CASE("Richards closed-form values") {
    const auto d = DispersalFunction::richards(0.2, 0.5, 10);
    CHECK(d.eval(10) == doctest::Approx(0.1));  // d(s) = r/2
    CHECK(d.at_zero() == doctest::Approx(0.2 / (1 + std::exp(5.0))));
    CHECK(DispersalFunction::richards(0.7, 0.5, 12).at_zero() ==
          doctest::Approx(0.7 / (1 + std::exp(6.0))));
    CHECK(DispersalFunction::richards(0.6, 0.5, 3).limit() == doctest::Approx(0.6));
    const auto c = DispersalFunction::constant(0.499);
    CHECK(c.eval(0) == 0.499);
    CHECK(c.eval(1e6) == 0.499);
    CHECK(c.at_zero() == 0.499);
    CHECK(c.limit() == 0.499);
}

TEST_CASE("values stay in (0,1) and below the limit") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(0.01, 0.99);
    std::uniform_real_distribution<double> pos(0.0, 50.0);
    for (int trial = 0; trial < 200; ++trial) {
        const auto d = DispersalFunction::richards(u(rng), 5 * u(rng), 20 * u(rng));
        double prev = -1;
        for (int k = 0; k <= 100; ++k) {
            const double x = 2.0 * k;
            const double v = d.eval(x);
            CHECK(v > 0.0);
            CHECK(v < 1.0);
            CHECK(v <= d.limit());
            CHECK(v >= prev);  // nondecreasing for k >= 0
            prev = v;
        }
        (void)pos;
    }
}

TEST_CASE("logistic evaluation does not overflow for extreme arguments") {
    const auto d = DispersalFunction::richards(0.5, 100, 1000);
    CHECK(d.eval(0) > 0.0);
    CHECK(d.eval(1e9) == doctest::Approx(0.5));
    CHECK(std::isfinite(d.at_zero()));
}

TEST_CASE("substochastic certification") {
    std::vector<double> grid;
    for (int k = 0; k <= 100; ++k) grid.push_back(2.0 * k);

    // Fig-2 style matrix: column sums of saturations 0.9
    DispersalMatrix fig2(2, {DispersalFunction::richards(0.2, 0.5, 10),
                             DispersalFunction::richards(0.6, 0.5, 3),
                             DispersalFunction::richards(0.7, 0.5, 12),
                             DispersalFunction::richards(0.3, 0.5, 6)});
    auto rep = fig2.check_substochastic(grid);
    CHECK(rep.holds);
    CHECK(rep.worst_column_sum == doctest::Approx(0.9));

    DispersalMatrix bad(2, {DispersalFunction::constant(0.6), DispersalFunction::constant(0.2),
                            DispersalFunction::constant(0.6), DispersalFunction::constant(0.2)});
    rep = bad.check_substochastic(grid);
    CHECK_FALSE(rep.holds);
    CHECK(rep.worst_column_sum == doctest::Approx(1.2));
    CHECK(rep.worst_column == 0);

    // Boundary sum 0.999 < 1 holds; exactly 1 is rejected
    DispersalMatrix close(2, {DispersalFunction::constant(0.499), DispersalFunction::richards(0.5, 1, 1),
                              DispersalFunction::richards(0.5, 1, 1), DispersalFunction::constant(0.499)});
    CHECK(close.check_substochastic(grid).holds);
    DispersalMatrix atone(2, {DispersalFunction::constant(0.5), DispersalFunction::constant(0.5),
                              DispersalFunction::constant(0.5), DispersalFunction::constant(0.5)});
    CHECK_FALSE(atone.check_substochastic(grid).holds);
}

TEST_CASE("saturation criterion agrees with dense sampling on random matrices") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(0.01, 0.7);
    std::vector<double> dense;
    for (int k = 0; k <= 4000; ++k) dense.push_back(0.5 * k);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<DispersalFunction> entries;
        for (int e = 0; e < 4; ++e)
            entries.push_back(DispersalFunction::richards(u(rng), 2 * u(rng), 10 * u(rng)));
        DispersalMatrix m(2, entries);
        const auto exact = m.check_substochastic({});
        // Dense sampling approaches the supremum from below
        double sampled_worst = 0;
        for (double x : dense)
            for (int j = 0; j < 2; ++j)
                sampled_worst = std::max(sampled_worst, m.at(0, j).eval(x) + m.at(1, j).eval(x));
        CHECK(sampled_worst <= exact.worst_column_sum + 1e-12);
        CHECK(exact.worst_column_sum - sampled_worst < 1e-3);
    }
}

TEST_CASE("construction and domain errors") {
    CHECK_THROWS_AS(DispersalFunction::constant(1.0), ConfigError);
    CHECK_THROWS_AS(DispersalFunction::richards(0.5, -1, 0), ConfigError);
    CHECK_THROWS_AS(DispersalFunction::constant(0.5).eval(-0.1), DomainError);
}

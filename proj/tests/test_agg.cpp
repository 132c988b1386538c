#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "gmfuse/agg.hpp"
#include "gmfuse/rng.hpp"

using namespace gmfuse;

namespace {

// Independent oracle for the median: full sort, then the footnote convention
// (k-th lowest for odd n, mean of the two middle order statistics for even).
double median_oracle(std::vector<double> x) {
    std::sort(x.begin(), x.end());
    const std::size_t n = x.size();
    return n % 2 ? x[n / 2] : 0.5 * (x[n / 2 - 1] + x[n / 2]);
}

} // namespace

TEST_CASE("domain types reject invalid input") {
    CHECK_THROWS_AS(agg::UnitVector({}), ArityError);
    CHECK_THROWS_AS(agg::UnitVector({0.5, 1.2}), DataError);
    CHECK_THROWS_AS(agg::UnitVector({-0.1}), DataError);
    CHECK_NOTHROW(agg::UnitVector({0.0, 1.0, 0.5}));

    CHECK_THROWS_AS(agg::WeightVector({0.5, 0.6}), DataError);     // sums to 1.1
    CHECK_THROWS_AS(agg::WeightVector({1.5, -0.5}), DataError);    // out of range
    CHECK_NOTHROW(agg::WeightVector({0.2, 0.45, 0.35}));

    CHECK_THROWS_AS(agg::DirectionVector({0.0, 0.0}), DataError);
    CHECK_NOTHROW(agg::DirectionVector({0.0, 1.0}));
}

TEST_CASE("basic aggregations") {
    const std::vector<double> x = {0.45, 0.3, 0.5};
    CHECK(agg::agg_min(x) == 0.3);
    CHECK(agg::agg_max({std::vector<double>{0.3, 0.5}}) == 0.5);
    CHECK(agg::agg_max({std::vector<double>{0.7, 0.0, 0.3}}) == 0.7);
    CHECK(agg::agg_arith({std::vector<double>{0.9, 0.3, 0.5}}) ==
          doctest::Approx(0.566667).epsilon(1e-6));
    CHECK(agg::agg_arith({std::vector<double>{0.1, 0.7, 0.5}}) ==
          doctest::Approx(0.433333).epsilon(1e-6));
    CHECK(agg::agg_prod({std::vector<double>{1.0, 0.4}}) == doctest::Approx(0.4));
    CHECK(agg::agg_prod({std::vector<double>{0.0, 0.4}}) == 0.0);
    CHECK(agg::agg_prod({std::vector<double>{0.5, 0.5}}) == doctest::Approx(0.25));

    // Degenerate n=1 returns the element itself.
    CHECK(agg::agg_min({std::vector<double>{0.7}}) == 0.7);
    CHECK(agg::agg_arith({std::vector<double>{0.7}}) == 0.7);

    CHECK_THROWS_AS(agg::agg_min(std::span<const double>{}), ArityError);
    CHECK_THROWS_AS(agg::agg_arith(std::span<const double>{}), ArityError);
}

TEST_CASE("owa reproduces the worked example and its degenerate forms") {
    const agg::WeightVector w({0.2, 0.45, 0.35});
    CHECK(agg::owa(w, std::vector<double>{0.7, 0.0, 0.3}) ==
          doctest::Approx(0.275).epsilon(1e-12));

    // Max as OWA: all mass on the first (largest) position.
    const agg::WeightVector w_max({1.0, 0.0, 0.0});
    Rng rng(7);
    for (int i = 0; i < 100; ++i) {
        std::vector<double> x(3);
        for (double& v : x) v = rng.next_double();
        CHECK(agg::owa(w_max, x) == doctest::Approx(agg::agg_max(x)).epsilon(1e-12));
        CHECK(agg::owa(agg::WeightVector::uniform(3), x) ==
              doctest::Approx(agg::agg_arith(x)).epsilon(1e-12));
    }

    CHECK_THROWS_AS(agg::owa(w, std::vector<double>{0.5, 0.5}), ArityError);
}

TEST_CASE("median follows the footnote convention") {
    CHECK(agg::median(std::vector<double>{0.9, 0.3, 0.5}) == 0.5);
    CHECK(agg::median(std::vector<double>{0.2, 0.8}) == doctest::Approx(0.5));

    const std::vector<double> even = {0.7, 0.0, 0.3, 0.4};
    const double expected = median_oracle(even);
    CHECK(expected == doctest::Approx(0.35));
    CHECK(agg::median(even) == doctest::Approx(expected).epsilon(1e-12));

    Rng rng(11);
    for (int i = 0; i < 500; ++i) {
        std::vector<double> x(2 + rng.next_index(9));
        for (double& v : x) v = rng.next_double();
        CHECK(agg::median(x) == doctest::Approx(median_oracle(x)).epsilon(1e-12));
    }
}

TEST_CASE("clamp_unit_checked tolerates noise and rejects real violations") {
    CHECK(agg::clamp_unit_checked(1.0 + 1e-12) == 1.0);
    CHECK(agg::clamp_unit_checked(-1e-12) == 0.0);
    CHECK(agg::clamp_unit_checked(0.5) == 0.5);
    CHECK_THROWS_AS(agg::clamp_unit_checked(1.1), std::logic_error);
    CHECK_THROWS_AS(agg::clamp_unit_checked(-0.01), std::logic_error);
}

TEST_CASE("directional monotonicity checker passes fully monotone functions") {
    const agg::DirectionVector ones({1.0, 1.0});
    const std::array<double, 3> steps = {0.1, 0.25, 0.5};
    const auto report = agg::check_directional_monotonicity(
        [](std::span<const double> x) { return agg::agg_min(x); }, ones, 2000, steps, 5);
    CHECK(report.passed);
    CHECK(report.comparisons > 0);
}

TEST_CASE("directional monotonicity checker finds a seeded violation") {
    // f decreases along (1,0): every positive step violates monotonicity.
    const agg::DirectionVector dir({1.0, 0.0});
    const std::array<double, 1> steps = {0.25};
    const auto report = agg::check_directional_monotonicity(
        [](std::span<const double> x) { return agg::clamp_unit_checked(1.0 - x[0]); }, dir,
        100, steps, 1);
    REQUIRE_FALSE(report.passed);
    REQUIRE(report.witness.has_value());
    CHECK(report.witness->fx > report.witness->fx_stepped);
    CHECK_FALSE(report.witness->describe().empty());

    // Same seed, same witness.
    const auto replay = agg::check_directional_monotonicity(
        [](std::span<const double> x) { return agg::clamp_unit_checked(1.0 - x[0]); }, dir,
        100, steps, 1);
    REQUIRE(replay.witness.has_value());
    CHECK(replay.witness->x == report.witness->x);
}

#include <doctest.h>

#include <cmath>
#include <vector>

#include "gmfuse/error.hpp"
#include "gmfuse/stats.hpp"

using namespace gmfuse;
using eval::MethodValues;
using eval::PairOutcome;

TEST_CASE("friedman statistic matches a hand-computed rank example") {
    // Ranks per block: A = (1,1,1,1), B = (2,2,2.5,3), C = (3,3,2.5,2);
    // rank sums 4, 9.5, 10.5 -> chi2 = 12/(4*3*4) * 216.5 - 3*4*4 = 6.125.
    const MethodValues values = {
        {"A", {0.90, 0.80, 0.85, 0.90}},
        {"B", {0.80, 0.70, 0.80, 0.70}},
        {"C", {0.70, 0.60, 0.80, 0.80}},
    };
    const auto result = eval::friedman_test(values);
    CHECK(result.statistic == doctest::Approx(6.125).epsilon(1e-12));
    // With 2 degrees of freedom the survival function is exp(-x/2).
    CHECK(result.p_value == doctest::Approx(std::exp(-6.125 / 2.0)).epsilon(1e-12));
    CHECK(result.avg_ranks.at("A") == doctest::Approx(1.0));
    CHECK(result.avg_ranks.at("B") == doctest::Approx(9.5 / 4.0));
    CHECK(result.avg_ranks.at("C") == doctest::Approx(10.5 / 4.0));
}

TEST_CASE("identical methods give statistic 0 and p = 1") {
    const std::vector<double> same = {0.5, 0.6, 0.7, 0.8};
    const MethodValues values = {{"A", same}, {"B", same}, {"C", same}};
    const auto result = eval::friedman_test(values);
    CHECK(result.statistic == doctest::Approx(0.0));
    CHECK(result.p_value == doctest::Approx(1.0));
}

TEST_CASE("friedman is invariant under strictly monotone transforms") {
    const MethodValues values = {
        {"A", {0.90, 0.80, 0.85, 0.90, 0.55}},
        {"B", {0.80, 0.70, 0.80, 0.70, 0.60}},
        {"C", {0.70, 0.60, 0.80, 0.80, 0.65}},
    };
    MethodValues squared;
    for (const auto& [name, v] : values) {
        std::vector<double> sq;
        for (const double x : v) sq.push_back(x * x);
        squared[name] = sq;
    }
    const auto a = eval::friedman_test(values);
    const auto b = eval::friedman_test(squared);
    CHECK(std::fabs(a.statistic - b.statistic) <= 1e-9);
}

TEST_CASE("friedman input validation") {
    CHECK_THROWS_AS(eval::friedman_test({{"A", {0.5, 0.6}}}), ConfigError);
    CHECK_THROWS_AS(eval::friedman_test({{"A", {0.5}}, {"B", {0.6}}}), ConfigError);
    CHECK_THROWS_AS(eval::friedman_test({{"A", {0.5, 0.6}}, {"B", {0.6}}}), ConfigError);
}

TEST_CASE("a dominant method wins every nemenyi comparison at alpha 0.01") {
    MethodValues values;
    for (int b = 0; b < 10; ++b) {
        values["best"].push_back(0.95 - 0.001 * b);
        values["mid"].push_back(0.80 - 0.001 * b);
        values["low"].push_back(0.70 - 0.001 * b);
    }
    const auto report = eval::nemenyi_posthoc(values, 0.01);
    CHECK(report.friedman.p_value < 0.01);
    // chi2 for ranks (1,2,3) over 10 blocks is 20.
    CHECK(report.friedman.statistic == doctest::Approx(20.0).epsilon(1e-12));
    CHECK(report.critical_difference ==
          doctest::Approx(2.913494 * std::sqrt(12.0 / 120.0)).epsilon(1e-6));
    CHECK(report.pairwise.at({"best", "mid"}) == PairOutcome::win);
    CHECK(report.pairwise.at({"best", "low"}) == PairOutcome::win);
    CHECK(report.pairwise.at({"mid", "best"}) == PairOutcome::loss);
    CHECK(report.pairwise.at({"low", "best"}) == PairOutcome::loss);
    // Antisymmetry on the remaining pair too.
    const auto mid_low = report.pairwise.at({"mid", "low"});
    const auto low_mid = report.pairwise.at({"low", "mid"});
    CHECK(((mid_low == PairOutcome::win && low_mid == PairOutcome::loss) ||
           (mid_low == PairOutcome::loss && low_mid == PairOutcome::win) ||
           (mid_low == PairOutcome::draw && low_mid == PairOutcome::draw)));
}

TEST_CASE("identical methods draw and relabeling does not change decisions") {
    const std::vector<double> same = {0.5, 0.6, 0.7};
    const auto report = eval::nemenyi_posthoc({{"A", same}, {"B", same}}, 0.05);
    CHECK(report.pairwise.at({"A", "B"}) == PairOutcome::draw);
    CHECK(report.pairwise.at({"B", "A"}) == PairOutcome::draw);

    MethodValues values;
    for (int b = 0; b < 10; ++b) {
        values["m1"].push_back(0.9);
        values["m2"].push_back(0.5 + 0.001 * b);
    }
    const auto r1 = eval::nemenyi_posthoc(values, 0.01);
    MethodValues relabeled = {{"zz", values["m1"]}, {"aa", values["m2"]}};
    const auto r2 = eval::nemenyi_posthoc(relabeled, 0.01);
    CHECK(r1.pairwise.at({"m1", "m2"}) == r2.pairwise.at({"zz", "aa"}));

    CHECK_THROWS_AS(eval::nemenyi_posthoc(values, 0.0), ConfigError);
    CHECK_THROWS_AS(eval::nemenyi_posthoc(values, 1.0), ConfigError);
    CHECK_THROWS_AS(eval::nemenyi_posthoc(values, 0.2), ConfigError);
}

TEST_CASE("win_draw_loss cells partition the dataset count") {
    // 25 per-dataset reports where the proposed method always draws.
    const std::vector<double> same = {0.5, 0.6, 0.7};
    std::vector<eval::StatReport> reports;
    for (int d = 0; d < 25; ++d) {
        reports.push_back(eval::nemenyi_posthoc({{"h_arith", same}, {"vote", same}}, 0.01));
    }
    const auto cells = eval::win_draw_loss(reports, {"h_arith"}, {"vote"});
    const auto& cell = cells.at({"h_arith", "vote"});
    CHECK(cell.wins == 0);
    CHECK(cell.draws == 25);
    CHECK(cell.losses == 0);
    CHECK(cell.wins + cell.draws + cell.losses == 25);

    const std::string grid = eval::format_wdl_grid(cells, {"h_arith"}, {"vote"});
    CHECK(grid.find("0 - 25 - 0") != std::string::npos);

    CHECK_THROWS_AS(eval::win_draw_loss(reports, {"nope"}, {"vote"}), ConfigError);
}

TEST_CASE("mixed outcomes accumulate into the expected cell") {
    MethodValues dominant;
    const std::vector<double> same = {0.5, 0.6, 0.7, 0.8, 0.9, 0.5, 0.6, 0.7, 0.8, 0.9};
    for (int b = 0; b < 10; ++b) {
        dominant["p"].push_back(0.95);
        dominant["q"].push_back(0.5 + 0.001 * b);
    }
    std::vector<eval::StatReport> reports;
    reports.push_back(eval::nemenyi_posthoc(dominant, 0.01));               // win
    reports.push_back(eval::nemenyi_posthoc({{"p", same}, {"q", same}}, 0.01));  // draw
    MethodValues losing = {{"q", dominant["p"]}, {"p", dominant["q"]}};
    reports.push_back(eval::nemenyi_posthoc(losing, 0.01));                 // loss
    const auto cells = eval::win_draw_loss(reports, {"p"}, {"q"});
    const auto& cell = cells.at({"p", "q"});
    CHECK(cell.wins == 1);
    CHECK(cell.draws == 1);
    CHECK(cell.losses == 1);
}

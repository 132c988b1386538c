#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace gmfuse::eval {

// method name -> one value per block, blocks aligned across methods
// (matched samples: the same dataset, or the same run of an experiment).
using MethodValues = std::map<std::string, std::vector<double>>;

struct FriedmanResult {
    double statistic = 0.0;
    double p_value = 1.0;
    std::size_t methods = 0;
    std::size_t blocks = 0;
    // Average rank per method (rank 1 = best = highest value), aligned with
    // the map's iteration order.
    std::map<std::string, double> avg_ranks;
};

// Friedman rank test with the chi-square approximation ((m-1) degrees of
// freedom); ties share average ranks.
FriedmanResult friedman_test(const MethodValues& values);

enum class PairOutcome { win, draw, loss };

struct StatReport {
    FriedmanResult friedman;
    double alpha = 0.01;
    double critical_difference = 0.0;
    // Outcome of (A, B) from A's perspective; antisymmetric by construction.
    std::map<std::pair<std::string, std::string>, PairOutcome> pairwise;
};

// Nemenyi post-hoc over all method pairs: a pair differs significantly when
// its average-rank gap exceeds the critical difference
// q_alpha(m) * sqrt(m(m+1)/(12n)). When the Friedman test does not reject at
// `alpha`, every pair is a draw. Supported alpha: 0.01 and 0.05.
StatReport nemenyi_posthoc(const MethodValues& values, double alpha);

struct WdlCell {
    std::size_t wins = 0;
    std::size_t draws = 0;
    std::size_t losses = 0;
};

// Per-dataset win/draw/loss counts of each proposed method against each
// baseline, aggregated over one StatReport per dataset.
std::map<std::pair<std::string, std::string>, WdlCell> win_draw_loss(
    const std::vector<StatReport>& per_dataset_reports,
    const std::vector<std::string>& proposed, const std::vector<std::string>& baselines);

// Renders the x-y-z grid (proposed methods as rows, baselines as columns).
std::string format_wdl_grid(
    const std::map<std::pair<std::string, std::string>, WdlCell>& cells,
    const std::vector<std::string>& proposed, const std::vector<std::string>& baselines);

} // namespace gmfuse::eval

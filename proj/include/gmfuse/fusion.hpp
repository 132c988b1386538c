#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gmfuse/agg.hpp"
#include "gmfuse/gm.hpp"
#include "gmfuse/rng.hpp"

// Second layer of the ensemble: turning an N x L matrix of member posteriors
// into a class decision.

namespace gmfuse::fusion {

// Member posteriors, one row per classifier, one column per class. Rows are
// probability distributions (sum 1 within 1e-6).
class ScoreMatrix {
public:
    static constexpr double kRowSumTol = 1e-6;

    ScoreMatrix(std::size_t members, std::size_t classes, std::vector<double> data);

    std::size_t members() const { return members_; }
    std::size_t classes() const { return classes_; }

    std::span<const double> row(std::size_t i) const {
        return {data_.data() + i * classes_, classes_};
    }
    void column(std::size_t j, std::span<double> out) const;
    std::vector<double> column(std::size_t j) const;

private:
    std::size_t members_;
    std::size_t classes_;
    std::vector<double> data_;
};

enum class TiePolicy { lowest_index, seeded_random };

TiePolicy parse_tie_policy(std::string_view name);
std::string_view tie_policy_name(TiePolicy policy);

// Index of the maximum of `value`; indices within 1e-12 of the maximum count
// as tied and are resolved by the policy.
std::size_t tie_break(std::span<const double> value, TiePolicy policy, Rng& rng);

// Per-class evidence captured while fusing with a GM combiner: the
// referential point, the absolute-deviation sum and the member weights.
struct GmTrace {
    std::vector<double> alpha;     // L
    std::vector<double> dist_sum;  // L
    std::vector<double> weights;   // N x L, row-major by member
};

struct Prediction {
    std::size_t class_index = 0;
    std::vector<double> fused_scores;
    std::optional<GmTrace> trace;
};

// Algorithm-1 style fusion: apply a scalar combiner to each class column.
Prediction classify_fusion(const ScoreMatrix& scores, const agg::ScalarFn& combiner,
                           TiePolicy policy, Rng& rng);

// GM fusion: per class, dynamic weights from the column (two-step route),
// then the weighted sum of that column.
Prediction classify_gm(const ScoreMatrix& scores, const gm::GmCombiner& combiner,
                       TiePolicy policy, Rng& rng);

// One vote per member for its own argmax class; fused scores are vote
// fractions.
Prediction majority_vote(const ScoreMatrix& scores, TiePolicy policy, Rng& rng);

// Named combiner as addressed from configs and the CLI.
struct Combiner {
    enum class Kind { stat_min, stat_max, stat_arith, stat_prod, vote, generalized_mixture };

    Kind kind = Kind::stat_arith;
    std::string name;
    std::optional<gm::GmCombiner> mixture;  // engaged when kind == generalized_mixture

    bool is_dynamic() const { return kind == Kind::generalized_mixture; }
};

// Accepts min, max, arith, prod, vote, h_med, h_arith, h_max, h_min.
Combiner parse_combiner(std::string_view name);

// The combiner set allowed in experiment configs (everything above but min).
const std::vector<std::string>& experiment_combiner_names();

Prediction classify(const ScoreMatrix& scores, const Combiner& combiner, TiePolicy policy,
                    Rng& rng);

} // namespace gmfuse::fusion

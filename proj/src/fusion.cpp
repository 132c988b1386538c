#include "gmfuse/fusion.hpp"

#include <algorithm>
#include <cmath>

#include "gmfuse/kernels.hpp"

namespace gmfuse::fusion {

ScoreMatrix::ScoreMatrix(std::size_t members, std::size_t classes, std::vector<double> data)
    : members_(members), classes_(classes), data_(std::move(data)) {
    if (members_ < 2) throw ArityError("ScoreMatrix: needs at least 2 members");
    if (classes_ < 2) throw ArityError("ScoreMatrix: needs at least 2 classes");
    if (data_.size() != members_ * classes_) {
        throw DataError("ScoreMatrix: expected " + std::to_string(members_ * classes_) +
                        " values, got " + std::to_string(data_.size()));
    }
    for (std::size_t i = 0; i < members_; ++i) {
        double sum = 0.0;
        for (std::size_t j = 0; j < classes_; ++j) {
            const double v = data_[i * classes_ + j];
            if (!(v >= 0.0 && v <= 1.0)) {
                throw DataError("ScoreMatrix: malformed scores, row " + std::to_string(i) +
                                " has value " + std::to_string(v) + " outside [0,1]");
            }
            sum += v;
        }
        if (std::fabs(sum - 1.0) > kRowSumTol) {
            throw DataError("ScoreMatrix: malformed scores, row " + std::to_string(i) +
                            " sums to " + std::to_string(sum) + " (expected 1 within 1e-6)");
        }
    }
}

void ScoreMatrix::column(std::size_t j, std::span<double> out) const {
    for (std::size_t i = 0; i < members_; ++i) out[i] = data_[i * classes_ + j];
}

std::vector<double> ScoreMatrix::column(std::size_t j) const {
    std::vector<double> out(members_);
    column(j, std::span<double>(out));
    return out;
}

TiePolicy parse_tie_policy(std::string_view name) {
    if (name == "lowest-index") return TiePolicy::lowest_index;
    if (name == "seeded-random") return TiePolicy::seeded_random;
    throw ConfigError("unknown tie policy '" + std::string(name) +
                      "'; supported: lowest-index, seeded-random");
}

std::string_view tie_policy_name(TiePolicy policy) {
    return policy == TiePolicy::lowest_index ? "lowest-index" : "seeded-random";
}

std::size_t tie_break(std::span<const double> value, TiePolicy policy, Rng& rng) {
    if (value.empty()) throw ArityError("tie_break: empty value vector");
    const double top = kernels::max(value);
    constexpr double kTieTol = 1e-12;
    if (policy == TiePolicy::lowest_index) {
        for (std::size_t i = 0; i < value.size(); ++i) {
            if (value[i] >= top - kTieTol) return i;
        }
        return 0;  // unreachable
    }
    std::vector<std::size_t> tied;
    for (std::size_t i = 0; i < value.size(); ++i) {
        if (value[i] >= top - kTieTol) tied.push_back(i);
    }
    return tied[rng.next_index(tied.size())];
}

Prediction classify_fusion(const ScoreMatrix& scores, const agg::ScalarFn& combiner,
                           TiePolicy policy, Rng& rng) {
    Prediction pred;
    pred.fused_scores.resize(scores.classes());
    std::vector<double> column(scores.members());
    for (std::size_t j = 0; j < scores.classes(); ++j) {
        scores.column(j, column);
        pred.fused_scores[j] = combiner(column);
    }
    pred.class_index = tie_break(pred.fused_scores, policy, rng);
    return pred;
}

Prediction classify_gm(const ScoreMatrix& scores, const gm::GmCombiner& combiner,
                       TiePolicy policy, Rng& rng) {
    const std::size_t n = scores.members();
    const std::size_t l = scores.classes();
    Prediction pred;
    pred.fused_scores.resize(l);
    GmTrace trace;
    trace.alpha.resize(l);
    trace.dist_sum.resize(l);
    trace.weights.resize(n * l);
    std::vector<double> column(n);
    for (std::size_t j = 0; j < l; ++j) {
        scores.column(j, column);
        trace.alpha[j] = combiner.selector().evaluate(column);
        trace.dist_sum[j] = kernels::abs_dev_sum(column, trace.alpha[j]);
        const agg::WeightVector w = gm::weights_calc(column, combiner.selector());
        for (std::size_t i = 0; i < n; ++i) trace.weights[i * l + j] = w[i];
        pred.fused_scores[j] = agg::clamp_unit_checked(kernels::dot(w.weights(), column));
    }
    pred.class_index = tie_break(pred.fused_scores, policy, rng);
    pred.trace = std::move(trace);
    return pred;
}

Prediction majority_vote(const ScoreMatrix& scores, TiePolicy policy, Rng& rng) {
    const std::size_t n = scores.members();
    const std::size_t l = scores.classes();
    Prediction pred;
    pred.fused_scores.assign(l, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t vote = tie_break(scores.row(i), policy, rng);
        pred.fused_scores[vote] += 1.0;
    }
    for (double& v : pred.fused_scores) v /= static_cast<double>(n);
    pred.class_index = tie_break(pred.fused_scores, policy, rng);
    return pred;
}

Combiner parse_combiner(std::string_view name) {
    Combiner c;
    c.name = std::string(name);
    if (name == "min") {
        c.kind = Combiner::Kind::stat_min;
    } else if (name == "max") {
        c.kind = Combiner::Kind::stat_max;
    } else if (name == "arith") {
        c.kind = Combiner::Kind::stat_arith;
    } else if (name == "prod") {
        c.kind = Combiner::Kind::stat_prod;
    } else if (name == "vote") {
        c.kind = Combiner::Kind::vote;
    } else if (name == "h_med" || name == "h_arith" || name == "h_max" || name == "h_min") {
        c.kind = Combiner::Kind::generalized_mixture;
        c.mixture = gm::make_combiner(name);
    } else {
        throw ConfigError("unknown combiner '" + std::string(name) +
                          "'; supported: min, max, arith, prod, vote, h_med, h_arith, "
                          "h_max, h_min");
    }
    return c;
}

const std::vector<std::string>& experiment_combiner_names() {
    static const std::vector<std::string> names = {"max",  "arith",   "prod",  "vote",
                                                   "h_med", "h_arith", "h_max", "h_min"};
    return names;
}

Prediction classify(const ScoreMatrix& scores, const Combiner& combiner, TiePolicy policy,
                    Rng& rng) {
    switch (combiner.kind) {
        case Combiner::Kind::stat_min:
            return classify_fusion(scores, agg::agg_min, policy, rng);
        case Combiner::Kind::stat_max:
            return classify_fusion(scores, agg::agg_max, policy, rng);
        case Combiner::Kind::stat_arith:
            return classify_fusion(scores, agg::agg_arith, policy, rng);
        case Combiner::Kind::stat_prod:
            return classify_fusion(scores, agg::agg_prod, policy, rng);
        case Combiner::Kind::vote:
            return majority_vote(scores, policy, rng);
        case Combiner::Kind::generalized_mixture:
            return classify_gm(scores, *combiner.mixture, policy, rng);
    }
    throw ConfigError("classify: unknown combiner kind");
}

} // namespace gmfuse::fusion

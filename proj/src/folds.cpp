#include "gmfuse/folds.hpp"

#include <algorithm>

#include "gmfuse/error.hpp"
#include "gmfuse/rng.hpp"

namespace gmfuse::eval {

std::vector<std::size_t> FoldPlan::test_rows(std::size_t fold) const {
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < assignments.size(); ++i) {
        if (assignments[i] == fold) rows.push_back(i);
    }
    return rows;
}

std::vector<std::size_t> FoldPlan::train_rows(std::size_t fold) const {
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < assignments.size(); ++i) {
        if (assignments[i] != fold) rows.push_back(i);
    }
    return rows;
}

FoldPlan stratified_kfold(const data::Dataset& d, std::size_t k, std::uint64_t seed) {
    const std::size_t n = d.n_rows();
    if (k < 2) throw ConfigError("stratified_kfold: k must be at least 2");
    if (k > n) {
        throw ConfigError("stratified_kfold: k = " + std::to_string(k) + " exceeds " +
                          std::to_string(n) + " instances");
    }
    FoldPlan plan;
    plan.k = k;
    plan.seed = seed;
    plan.assignments.assign(n, 0);
    Rng rng(seed);

    std::vector<std::vector<std::size_t>> by_class(d.class_labels.size());
    for (std::size_t i = 0; i < n; ++i) {
        by_class[static_cast<std::size_t>(d.labels[i])].push_back(i);
    }
    const bool can_stratify =
        std::all_of(by_class.begin(), by_class.end(),
                    [k](const auto& idx) { return idx.size() >= k; });

    if (!can_stratify) {
        plan.stratified = false;
        std::vector<std::size_t> order(n);
        for (std::size_t i = 0; i < n; ++i) order[i] = i;
        rng.shuffle(order);
        for (std::size_t pos = 0; pos < n; ++pos) plan.assignments[order[pos]] = pos % k;
        return plan;
    }

    std::size_t next_fold = 0;
    for (auto& idx : by_class) {
        rng.shuffle(idx);
        for (const std::size_t i : idx) {
            plan.assignments[i] = next_fold;
            next_fold = (next_fold + 1) % k;
        }
    }
    return plan;
}

} // namespace gmfuse::eval

#pragma once

#include <cstdint>
#include <vector>

#include "gmfuse/dataset.hpp"

namespace gmfuse::eval {

struct FoldPlan {
    std::size_t k = 0;
    std::vector<std::size_t> assignments;  // instance index -> fold index
    std::uint64_t seed = 0;
    // false when some class had fewer than k instances and the plan fell
    // back to plain shuffled folds
    bool stratified = true;

    std::vector<std::size_t> test_rows(std::size_t fold) const;
    std::vector<std::size_t> train_rows(std::size_t fold) const;
};

// Stratified k-fold partition: per-class indices are shuffled and dealt
// round-robin, carrying the dealing position across classes so fold sizes
// stay balanced. Deterministic in `seed`.
FoldPlan stratified_kfold(const data::Dataset& d, std::size_t k, std::uint64_t seed);

} // namespace gmfuse::eval

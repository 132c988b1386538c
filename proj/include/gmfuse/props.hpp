#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gmfuse/gm.hpp"

// Runnable algebraic property suite for the aggregation operators and the GM
// combiners. Each check draws its own deterministic sample stream, so a
// failing property reproduces bit-identically from the same seed.

namespace gmfuse::props {

struct PropertyResult {
    std::string name;
    bool passed = true;
    std::size_t checks = 0;
    std::string witness;  // first counterexample, empty when passed
};

struct SuiteOptions {
    std::size_t samples = 10000;  // per property (and per combiner where applicable)
    std::uint64_t seed = 20240405;
    std::size_t min_arity = 2;
    std::size_t max_arity = 10;
};

// Every invariant of the aggregation core and the GM combiners.
std::vector<PropertyResult> run_all(const SuiteOptions& opts);

// Normalization check for an arbitrary weight-function family (also used as
// a negative control against deliberately broken families).
PropertyResult check_fwf_normalization(const gm::WeightFunctionFamily& fwf,
                                       const std::string& name, std::size_t samples,
                                       std::uint64_t seed, double tol = 1e-12);

// The ratio-weighted GM of arity 3 whose weights are x_i / sum(x): a proper
// FWF that is not coordinatewise monotone.
gm::WeightFunctionFamily ratio_family3();

} // namespace gmfuse::props

#pragma once

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gmfuse/agg.hpp"

// Generalized mixture (GM) combiners: weighted averages whose weight vector
// is recomputed from each input. The referential point Theta turns member
// agreement into weights: the further a value sits from the consensus, the
// less it contributes.

namespace gmfuse::gm {

enum class SelectorKind { median, arithmetic_mean, maximum, minimum };

// The per-class consensus function Theta.
class ReferentialSelector {
public:
    explicit ReferentialSelector(SelectorKind kind) : kind_(kind) {}

    SelectorKind kind() const { return kind_; }
    double evaluate(std::span<const double> x) const;

private:
    SelectorKind kind_;
};

// Family of weight functions: maps a point of [0,1]^n to n weights that sum
// to 1. The sum-to-1 contract is the family author's obligation; the
// property suite verifies it rather than every call re-checking it.
struct WeightFunctionFamily {
    std::size_t arity = 0;
    std::function<std::vector<double>(std::span<const double>)> weights;
};

// Generic GM evaluation: sum_i f_i(x) * x_i.
double gm_apply(const WeightFunctionFamily& fwf, std::span<const double> x);

// Dynamic weights from a referential point (two-step route):
//   alpha = Theta(o), d = sum_i |o_i - alpha|,
//   w_i = (1/(N-1)) * (1 - |o_i - alpha| / d)   when d > 0,
//   w_i = 1/N                                   when d = 0 (all inputs equal).
// Requires N >= 2.
agg::WeightVector weights_calc(std::span<const double> o, const ReferentialSelector& selector);

// Inputs whose absolute-deviation sum falls at or below this are treated as
// all-equal; for the four supported selectors d = 0 exactly characterizes
// equality, the epsilon only absorbs representation noise.
inline constexpr double kAllEqualEps = 1e-15;

class GmCombiner {
public:
    GmCombiner(ReferentialSelector selector, std::string label)
        : selector_(selector), label_(std::move(label)) {}

    const ReferentialSelector& selector() const { return selector_; }
    const std::string& label() const { return label_; }

    double apply(std::span<const double> x) const;

private:
    ReferentialSelector selector_;
    std::string label_;
};

// Closed-form H_Theta (single-expression route, kept independent from the
// weights_calc path so the two can be cross-checked):
//   x_1 when all coordinates are equal, otherwise
//   (1/(n-1)) * sum_i (x_i - x_i * |x_i - Theta(x)| / sum_j |x_j - Theta(x)|).
double h_theta_apply(const GmCombiner& combiner, std::span<const double> x);

// The original median-referenced GM function, with its printed 1/n leading
// factor. Kept verbatim as a separate operation: it is NOT the same
// normalization as h_theta_apply with the median selector (1/(n-1)), and the
// two disagree numerically on non-equal inputs.
double h_function_apply(std::span<const double> x);

// Combiner factory for the four supported referential points. String names
// are the config/CLI identifiers: h_med, h_arith, h_max, h_min.
GmCombiner make_combiner(SelectorKind kind);
GmCombiner make_combiner(std::string_view name);

std::string_view selector_name(SelectorKind kind);

} // namespace gmfuse::gm

#include "gmfuse/gm.hpp"

#include <cmath>

#include "gmfuse/kernels.hpp"

namespace gmfuse::gm {

double ReferentialSelector::evaluate(std::span<const double> x) const {
    switch (kind_) {
        case SelectorKind::median: return agg::median(x);
        case SelectorKind::arithmetic_mean: return agg::agg_arith(x);
        case SelectorKind::maximum: return agg::agg_max(x);
        case SelectorKind::minimum: return agg::agg_min(x);
    }
    throw ConfigError("ReferentialSelector: unknown kind");
}

double gm_apply(const WeightFunctionFamily& fwf, std::span<const double> x) {
    if (x.size() != fwf.arity) {
        throw ArityError("gm_apply: input arity " + std::to_string(x.size()) +
                         " != family arity " + std::to_string(fwf.arity));
    }
    const std::vector<double> w = fwf.weights(x);
    if (w.size() != x.size()) {
        throw ArityError("gm_apply: weight family produced wrong arity");
    }
    return agg::clamp_unit_checked(kernels::dot(w, x));
}

agg::WeightVector weights_calc(std::span<const double> o, const ReferentialSelector& selector) {
    const std::size_t n = o.size();
    if (n < 2) throw ArityError("weights_calc: needs at least 2 inputs");
    const double alpha = selector.evaluate(o);
    const double d = kernels::abs_dev_sum(o, alpha);
    std::vector<double> w(n);
    if (d <= kAllEqualEps) {
        const double uniform = 1.0 / static_cast<double>(n);
        for (double& wi : w) wi = uniform;
    } else {
        const double scale = 1.0 / static_cast<double>(n - 1);
        for (std::size_t i = 0; i < n; ++i) {
            w[i] = scale * (1.0 - std::fabs(o[i] - alpha) / d);
        }
    }
    return agg::WeightVector(std::move(w));
}

double GmCombiner::apply(std::span<const double> x) const {
    return h_theta_apply(*this, x);
}

double h_theta_apply(const GmCombiner& combiner, std::span<const double> x) {
    const std::size_t n = x.size();
    if (n < 2) throw ArityError("h_theta_apply: needs at least 2 inputs");
    const double alpha = combiner.selector().evaluate(x);
    const double d = kernels::abs_dev_sum(x, alpha);
    if (d <= kAllEqualEps) return x[0];
    double sum = 0.0;
    for (const double xi : x) {
        sum += xi - xi * std::fabs(xi - alpha) / d;
    }
    return agg::clamp_unit_checked(sum / static_cast<double>(n - 1));
}

double h_function_apply(std::span<const double> x) {
    const std::size_t n = x.size();
    if (n < 2) throw ArityError("h_function_apply: needs at least 2 inputs");
    const double med = agg::median(x);
    const double d = kernels::abs_dev_sum(x, med);
    if (d <= kAllEqualEps) return x[0];
    double sum = 0.0;
    for (const double xi : x) {
        sum += xi - xi * std::fabs(xi - med) / d;
    }
    return agg::clamp_unit_checked(sum / static_cast<double>(n));
}

std::string_view selector_name(SelectorKind kind) {
    switch (kind) {
        case SelectorKind::median: return "median";
        case SelectorKind::arithmetic_mean: return "arithmetic-mean";
        case SelectorKind::maximum: return "maximum";
        case SelectorKind::minimum: return "minimum";
    }
    return "?";
}

GmCombiner make_combiner(SelectorKind kind) {
    switch (kind) {
        case SelectorKind::median: return {ReferentialSelector(kind), "H_Med"};
        case SelectorKind::arithmetic_mean: return {ReferentialSelector(kind), "H_Arith"};
        case SelectorKind::maximum: return {ReferentialSelector(kind), "H_Max"};
        case SelectorKind::minimum: return {ReferentialSelector(kind), "H_Min"};
    }
    throw ConfigError("make_combiner: unknown selector kind");
}

GmCombiner make_combiner(std::string_view name) {
    if (name == "h_med") return make_combiner(SelectorKind::median);
    if (name == "h_arith") return make_combiner(SelectorKind::arithmetic_mean);
    if (name == "h_max") return make_combiner(SelectorKind::maximum);
    if (name == "h_min") return make_combiner(SelectorKind::minimum);
    throw ConfigError("make_combiner: unknown combiner '" + std::string(name) +
                      "'; supported: h_med, h_arith, h_max, h_min");
}

} // namespace gmfuse::gm

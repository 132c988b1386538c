#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gmfuse/error.hpp"

// Classical aggregation operators on [0,1]^n and the directional
// monotonicity checker used by the property suite.

namespace gmfuse::agg {

// A validated point of [0,1]^n, n >= 1. Operations accept plain spans; this
// type is the boundary check for data that enters from outside (score files,
// random generators, CLI input).
class UnitVector {
public:
    explicit UnitVector(std::vector<double> values);

    std::span<const double> values() const { return values_; }
    operator std::span<const double>() const { return values_; }
    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }

private:
    std::vector<double> values_;
};

// Nonnegative weights summing to 1 (tolerance 1e-9).
class WeightVector {
public:
    explicit WeightVector(std::vector<double> weights);

    std::span<const double> weights() const { return weights_; }
    operator std::span<const double>() const { return weights_; }
    std::size_t size() const { return weights_.size(); }
    double operator[](std::size_t i) const { return weights_[i]; }

    // Uniform 1/n vector.
    static WeightVector uniform(std::size_t n);

private:
    std::vector<double> weights_;
};

// Direction for r-monotonicity checks; at least one nonzero component.
class DirectionVector {
public:
    explicit DirectionVector(std::vector<double> components);

    std::span<const double> components() const { return components_; }
    std::size_t size() const { return components_.size(); }

private:
    std::vector<double> components_;
};

// Clamps floating noise within `tol` of [0,1] and throws on anything worse:
// a genuinely out-of-range aggregate means a formula bug, not rounding.
double clamp_unit_checked(double v, double tol = 1e-9);

double agg_min(std::span<const double> x);
double agg_max(std::span<const double> x);
double agg_arith(std::span<const double> x);
double agg_prod(std::span<const double> x);

// OWA per Yager: weights are applied to the decreasing rearrangement of x.
double owa(const WeightVector& w, std::span<const double> x);

// Median with the order-statistic convention of the OWA literature: for
// n = 2k-1 the k-th lowest element, for n = 2k the mean of the k-th and
// (k+1)-th lowest.
double median(std::span<const double> x);

using ScalarFn = std::function<double(std::span<const double>)>;

struct MonotonicityWitness {
    std::vector<double> x;
    std::vector<double> x_stepped;
    double step = 0.0;
    double fx = 0.0;
    double fx_stepped = 0.0;

    std::string describe() const;
};

struct MonotonicityReport {
    bool passed = true;
    std::size_t comparisons = 0;
    std::optional<MonotonicityWitness> witness;
};

// Samples `samples` random points of [0,1]^n and asserts
// f(x) <= f(x + k*r) + tol for every step k in `step_grid` that keeps the
// stepped point inside the cube. Points in `explicit_points` are checked
// first, so a known counterexample is reported as the witness.
MonotonicityReport check_directional_monotonicity(
    const ScalarFn& f, const DirectionVector& r, std::size_t samples,
    std::span<const double> step_grid, std::uint64_t seed,
    std::span<const std::vector<double>> explicit_points = {}, double tol = 1e-12);

} // namespace gmfuse::agg

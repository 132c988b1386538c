#include "gmfuse/agg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gmfuse/kernels.hpp"
#include "gmfuse/rng.hpp"

namespace gmfuse::agg {

UnitVector::UnitVector(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) throw ArityError("UnitVector: empty input");
    for (std::size_t i = 0; i < values_.size(); ++i) {
        const double v = values_[i];
        if (!(v >= 0.0 && v <= 1.0)) {
            throw DataError("UnitVector: element " + std::to_string(i) + " = " +
                            std::to_string(v) + " outside [0,1]");
        }
    }
}

WeightVector::WeightVector(std::vector<double> weights) : weights_(std::move(weights)) {
    if (weights_.empty()) throw ArityError("WeightVector: empty input");
    double sum = 0.0;
    for (std::size_t i = 0; i < weights_.size(); ++i) {
        const double w = weights_[i];
        if (!(w >= 0.0 && w <= 1.0)) {
            throw DataError("WeightVector: weight " + std::to_string(i) + " = " +
                            std::to_string(w) + " outside [0,1]");
        }
        sum += w;
    }
    if (std::fabs(sum - 1.0) > 1e-9) {
        throw DataError("WeightVector: weights sum to " + std::to_string(sum) +
                        ", expected 1");
    }
}

WeightVector WeightVector::uniform(std::size_t n) {
    if (n == 0) throw ArityError("WeightVector::uniform: n must be >= 1");
    return WeightVector(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

DirectionVector::DirectionVector(std::vector<double> components)
    : components_(std::move(components)) {
    if (components_.empty()) throw ArityError("DirectionVector: empty input");
    const bool any_nonzero =
        std::any_of(components_.begin(), components_.end(), [](double c) { return c != 0.0; });
    if (!any_nonzero) throw DataError("DirectionVector: all components are zero");
}

double clamp_unit_checked(double v, double tol) {
    if (v < -tol || v > 1.0 + tol) {
        throw std::logic_error("aggregate " + std::to_string(v) +
                               " outside [0,1] beyond tolerance");
    }
    return std::clamp(v, 0.0, 1.0);
}

namespace {
void require_nonempty(std::span<const double> x, const char* op) {
    if (x.empty()) throw ArityError(std::string(op) + ": empty input");
}
} // namespace

double agg_min(std::span<const double> x) {
    require_nonempty(x, "agg_min");
    return kernels::min(x);
}

double agg_max(std::span<const double> x) {
    require_nonempty(x, "agg_max");
    return kernels::max(x);
}

double agg_arith(std::span<const double> x) {
    require_nonempty(x, "agg_arith");
    return clamp_unit_checked(kernels::sum(x) / static_cast<double>(x.size()));
}

double agg_prod(std::span<const double> x) {
    require_nonempty(x, "agg_prod");
    return clamp_unit_checked(kernels::prod(x));
}

double owa(const WeightVector& w, std::span<const double> x) {
    require_nonempty(x, "owa");
    if (w.size() != x.size()) {
        throw ArityError("owa: weight arity " + std::to_string(w.size()) +
                         " != input arity " + std::to_string(x.size()));
    }
    std::vector<double> sorted(x.begin(), x.end());
    std::stable_sort(sorted.begin(), sorted.end(), std::greater<double>());
    return clamp_unit_checked(kernels::dot(w.weights(), sorted));
}

double median(std::span<const double> x) {
    require_nonempty(x, "median");
    std::vector<double> sorted(x.begin(), x.end());
    std::stable_sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    if (n % 2 == 1) return sorted[n / 2];
    return 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
}

std::string MonotonicityWitness::describe() const {
    std::ostringstream os;
    os.precision(12);
    auto print = [&os](std::span<const double> v) {
        os << "(";
        for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
        os << ")";
    };
    os << "f";
    print(x);
    os << " = " << fx << " > f";
    print(x_stepped);
    os << " = " << fx_stepped << " at step " << step;
    return os.str();
}

namespace {

bool inside_unit_cube(std::span<const double> x) {
    return std::all_of(x.begin(), x.end(), [](double v) { return v >= 0.0 && v <= 1.0; });
}

// Checks all steps from one base point; returns false and fills the report
// witness on the first violation.
bool check_point(const ScalarFn& f, std::span<const double> r,
                 std::span<const double> step_grid, std::span<const double> x,
                 double tol, MonotonicityReport& report) {
    const double fx = f(x);
    std::vector<double> stepped(x.size());
    for (const double k : step_grid) {
        if (k < 0.0) continue;
        for (std::size_t i = 0; i < x.size(); ++i) stepped[i] = x[i] + k * r[i];
        if (!inside_unit_cube(stepped)) continue;
        const double fs = f(stepped);
        ++report.comparisons;
        if (fx > fs + tol) {
            report.passed = false;
            report.witness = MonotonicityWitness{
                std::vector<double>(x.begin(), x.end()), stepped, k, fx, fs};
            return false;
        }
    }
    return true;
}

} // namespace

MonotonicityReport check_directional_monotonicity(
    const ScalarFn& f, const DirectionVector& r, std::size_t samples,
    std::span<const double> step_grid, std::uint64_t seed,
    std::span<const std::vector<double>> explicit_points, double tol) {
    if (samples < 1 && explicit_points.empty()) {
        throw ConfigError("check_directional_monotonicity: needs at least one sample");
    }
    MonotonicityReport report;
    for (const auto& p : explicit_points) {
        if (p.size() != r.size()) {
            throw ArityError("check_directional_monotonicity: explicit point arity mismatch");
        }
        if (!check_point(f, r.components(), step_grid, p, tol, report)) return report;
    }
    Rng rng(seed);
    std::vector<double> x(r.size());
    for (std::size_t s = 0; s < samples; ++s) {
        for (double& v : x) v = rng.next_double();
        if (!check_point(f, r.components(), step_grid, x, tol, report)) return report;
    }
    return report;
}

} // namespace gmfuse::agg

#include "gmfuse/props.hpp"

#include <array>
#include <cmath>
#include <numeric>
#include <sstream>

#include "gmfuse/kernels.hpp"
#include "gmfuse/rng.hpp"

namespace gmfuse::props {

namespace {

std::string format_vec(std::span<const double> v) {
    std::ostringstream os;
    os.precision(12);
    os << "(";
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
    os << ")";
    return os.str();
}

class Sampler {
public:
    Sampler(const SuiteOptions& opts, std::uint64_t salt)
        : rng_(derive_seed(opts.seed, "props", {salt})),
          min_arity_(opts.min_arity),
          max_arity_(opts.max_arity) {}

    std::size_t next_arity() {
        return min_arity_ + rng_.next_index(max_arity_ - min_arity_ + 1);
    }

    // x_i in [0,1)
    std::vector<double> unit_vec(std::size_t n) {
        std::vector<double> x(n);
        for (double& v : x) v = rng_.next_double();
        return x;
    }

    std::vector<double> weight_vec(std::size_t n) {
        std::vector<double> w(n);
        double sum = 0.0;
        for (double& v : w) {
            v = rng_.next_double();
            sum += v;
        }
        if (sum == 0.0) {
            w.assign(n, 1.0 / static_cast<double>(n));
        } else {
            for (double& v : w) v /= sum;
        }
        return w;
    }

    Rng& rng() { return rng_; }

private:
    Rng rng_;
    std::size_t min_arity_;
    std::size_t max_arity_;
};

using CheckFn = std::function<bool(Sampler&, std::string&)>;

PropertyResult run_property(const std::string& name, const SuiteOptions& opts,
                            std::uint64_t salt, const CheckFn& one_check) {
    PropertyResult result;
    result.name = name;
    Sampler sampler(opts, salt);
    for (std::size_t s = 0; s < opts.samples; ++s) {
        std::string witness;
        if (!one_check(sampler, witness)) {
            result.passed = false;
            result.witness = witness;
            result.checks = s + 1;
            return result;
        }
    }
    result.checks = opts.samples;
    return result;
}

struct NamedAgg {
    const char* name;
    double (*fn)(std::span<const double>);
};

constexpr std::array<NamedAgg, 4> kStaticAggs = {{
    {"agg_min", agg::agg_min},
    {"agg_max", agg::agg_max},
    {"agg_arith", agg::agg_arith},
    {"agg_prod", agg::agg_prod},
}};

constexpr std::array<gm::SelectorKind, 4> kSelectors = {
    gm::SelectorKind::median,
    gm::SelectorKind::arithmetic_mean,
    gm::SelectorKind::maximum,
    gm::SelectorKind::minimum,
};

// Weight vector that reproduces the median as an OWA: mass on the middle
// order statistic(s) of the decreasing rearrangement.
std::vector<double> median_owa_weights(std::size_t n) {
    std::vector<double> w(n, 0.0);
    if (n % 2 == 1) {
        w[(n - 1) / 2] = 1.0;
    } else {
        w[n / 2 - 1] = 0.5;
        w[n / 2] = 0.5;
    }
    return w;
}

} // namespace

gm::WeightFunctionFamily ratio_family3() {
    gm::WeightFunctionFamily fwf;
    fwf.arity = 3;
    fwf.weights = [](std::span<const double> x) {
        const double total = x[0] + x[1] + x[2];
        if (total == 0.0) return std::vector<double>{1.0 / 3, 1.0 / 3, 1.0 / 3};
        return std::vector<double>{x[0] / total, x[1] / total, x[2] / total};
    };
    return fwf;
}

PropertyResult check_fwf_normalization(const gm::WeightFunctionFamily& fwf,
                                       const std::string& name, std::size_t samples,
                                       std::uint64_t seed, double tol) {
    PropertyResult result;
    result.name = name;
    Rng rng(seed);
    std::vector<double> x(fwf.arity);
    for (std::size_t s = 0; s < samples; ++s) {
        for (double& v : x) v = rng.next_double();
        const std::vector<double> w = fwf.weights(x);
        const double sum = std::accumulate(w.begin(), w.end(), 0.0);
        ++result.checks;
        if (std::fabs(sum - 1.0) > tol) {
            result.passed = false;
            result.witness = "weights" + format_vec(w) + " for x" + format_vec(x) +
                             " sum to " + std::to_string(sum);
            return result;
        }
    }
    return result;
}

std::vector<PropertyResult> run_all(const SuiteOptions& opts) {
    std::vector<PropertyResult> results;
    std::uint64_t salt = 0;

    // Boundary condition: 0 on the all-zeros tuple, 1 on the all-ones tuple.
    results.push_back(run_property(
        "boundary_conditions", opts, salt++, [](Sampler& s, std::string& witness) {
            const std::size_t n = s.next_arity();
            const std::vector<double> zeros(n, 0.0), ones(n, 1.0);
            const agg::WeightVector w(s.weight_vec(n));
            struct Probe {
                const char* name;
                double at_zero;
                double at_one;
                double tol;  // 0 where the arithmetic is exact
            };
            const std::array<Probe, 6> probes = {{
                {"agg_min", agg::agg_min(zeros), agg::agg_min(ones), 0.0},
                {"agg_max", agg::agg_max(zeros), agg::agg_max(ones), 0.0},
                {"agg_arith", agg::agg_arith(zeros), agg::agg_arith(ones), 0.0},
                {"agg_prod", agg::agg_prod(zeros), agg::agg_prod(ones), 0.0},
                // Random weights renormalize to 1 only within rounding.
                {"owa", agg::owa(w, zeros), agg::owa(w, ones), 1e-12},
                {"median", agg::median(zeros), agg::median(ones), 0.0},
            }};
            for (const auto& p : probes) {
                if (std::fabs(p.at_zero) > p.tol || std::fabs(p.at_one - 1.0) > p.tol) {
                    witness = std::string(p.name) + " boundary failed at n=" +
                              std::to_string(n);
                    return false;
                }
            }
            return true;
        }));

    // OWA is an averaging function: min <= OWA <= max.
    results.push_back(run_property(
        "owa_averaging_bound", opts, salt++, [](Sampler& s, std::string& witness) {
            const std::size_t n = s.next_arity();
            const std::vector<double> x = s.unit_vec(n);
            const agg::WeightVector w(s.weight_vec(n));
            const double v = agg::owa(w, x);
            const double lo = agg::agg_min(x), hi = agg::agg_max(x);
            if (v < lo - 1e-12 || v > hi + 1e-12) {
                witness = "owa" + format_vec(x) + " = " + std::to_string(v) +
                          " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]";
                return false;
            }
            return true;
        }));

    results.push_back(run_property(
        "owa_symmetry", opts, salt++, [](Sampler& s, std::string& witness) {
            const std::size_t n = s.next_arity();
            const std::vector<double> x = s.unit_vec(n);
            const agg::WeightVector w(s.weight_vec(n));
            std::vector<double> perm = x;
            s.rng().shuffle(perm);
            const double a = agg::owa(w, x), b = agg::owa(w, perm);
            if (std::fabs(a - b) > 1e-12) {
                witness = "owa" + format_vec(x) + " != owa" + format_vec(perm);
                return false;
            }
            return true;
        }));

    results.push_back(run_property(
        "owa_shift_invariance", opts, salt++, [](Sampler& s, std::string& witness) {
            const std::size_t n = s.next_arity();
            const std::vector<double> x = s.unit_vec(n);
            const agg::WeightVector w(s.weight_vec(n));
            const double lo = agg::agg_min(x), hi = agg::agg_max(x);
            const double lambda = s.rng().next_double(-lo, 1.0 - hi);
            std::vector<double> shifted(n);
            for (std::size_t i = 0; i < n; ++i) shifted[i] = x[i] + lambda;
            const double a = agg::owa(w, x), b = agg::owa(w, shifted);
            if (std::fabs(a + lambda - b) > 1e-12) {
                witness = "owa" + format_vec(x) + " + " + std::to_string(lambda) +
                          " != owa(x + lambda)";
                return false;
            }
            return true;
        }));

    // Idempotency of the averaging operators (prod is exempt: not idempotent).
    results.push_back(run_property(
        "idempotency_static", opts, salt++, [](Sampler& s, std::string& witness) {
            const std::size_t n = s.next_arity();
            const double v = s.rng().next_double();
            const std::vector<double> x(n, v);
            const agg::WeightVector w(s.weight_vec(n));
            const std::array<std::pair<const char*, double>, 5> probes = {{
                {"agg_min", agg::agg_min(x)},
                {"agg_max", agg::agg_max(x)},
                {"agg_arith", agg::agg_arith(x)},
                {"owa", agg::owa(w, x)},
                {"median", agg::median(x)},
            }};
            for (const auto& [name, got] : probes) {
                if (std::fabs(got - v) > 1e-12) {
                    witness = std::string(name) + "(" + std::to_string(v) + ",...) = " +
                              std::to_string(got);
                    return false;
                }
            }
            return true;
        }));

    results.push_back(run_property(
        "median_equals_owa_middle_mass", opts, salt++, [](Sampler& s, std::string& witness) {
            const std::size_t n = s.next_arity();
            const std::vector<double> x = s.unit_vec(n);
            const agg::WeightVector w(median_owa_weights(n));
            const double a = agg::median(x), b = agg::owa(w, x);
            if (std::fabs(a - b) > 1e-12) {
                witness = "median" + format_vec(x) + " = " + std::to_string(a) +
                          " but owa gives " + std::to_string(b);
                return false;
            }
            return true;
        }));

    for (const gm::SelectorKind kind : kSelectors) {
        const gm::GmCombiner combiner = gm::make_combiner(kind);
        const std::string tag = "[" + combiner.label() + "]";

        results.push_back(run_property(
            "weights_normalization" + tag, opts, salt++,
            [&combiner](Sampler& s, std::string& witness) {
                const std::size_t n = s.next_arity();
                const std::vector<double> x = s.unit_vec(n);
                const agg::WeightVector w = gm::weights_calc(x, combiner.selector());
                const double sum =
                    std::accumulate(w.weights().begin(), w.weights().end(), 0.0);
                if (std::fabs(sum - 1.0) > 1e-12) {
                    witness = "weights for " + format_vec(x) + " sum to " +
                              std::to_string(sum);
                    return false;
                }
                return true;
            }));

        // Closer to the referential point means strictly more weight. Pairs
        // whose distances differ by less than 1e-9 are skipped: the strict
        // comparison is meaningless inside floating noise.
        results.push_back(run_property(
            "weights_distance_monotonicity" + tag, opts, salt++,
            [&combiner](Sampler& s, std::string& witness) {
                const std::size_t n = s.next_arity();
                const std::vector<double> x = s.unit_vec(n);
                const double alpha = combiner.selector().evaluate(x);
                const agg::WeightVector w = gm::weights_calc(x, combiner.selector());
                for (std::size_t i = 0; i < n; ++i) {
                    for (std::size_t j = 0; j < n; ++j) {
                        const double di = std::fabs(x[i] - alpha);
                        const double dj = std::fabs(x[j] - alpha);
                        if (di + 1e-9 < dj && !(w[i] > w[j])) {
                            witness = "x" + format_vec(x) + ": |x_" + std::to_string(i) +
                                      " - alpha| < |x_" + std::to_string(j) +
                                      " - alpha| but w_i <= w_j";
                            return false;
                        }
                    }
                }
                return true;
            }));

        results.push_back(run_property(
            "averaging_bound" + tag, opts, salt++,
            [&combiner](Sampler& s, std::string& witness) {
                const std::size_t n = s.next_arity();
                const std::vector<double> x = s.unit_vec(n);
                const double v = gm::h_theta_apply(combiner, x);
                const double lo = agg::agg_min(x), hi = agg::agg_max(x);
                if (v < lo - 1e-12 || v > hi + 1e-12) {
                    witness = combiner.label() + format_vec(x) + " = " + std::to_string(v) +
                              " outside [min, max]";
                    return false;
                }
                return true;
            }));

        results.push_back(run_property(
            "idempotency" + tag, opts, salt++,
            [&combiner](Sampler& s, std::string& witness) {
                const std::size_t n = s.next_arity();
                const double v = s.rng().next_double();
                const std::vector<double> x(n, v);
                const double got = gm::h_theta_apply(combiner, x);
                if (std::fabs(got - v) > 1e-12) {
                    witness = combiner.label() + "(" + std::to_string(v) + ",...) = " +
                              std::to_string(got);
                    return false;
                }
                return true;
            }));

        results.push_back(run_property(
            "homogeneity" + tag, opts, salt++,
            [&combiner](Sampler& s, std::string& witness) {
                const std::size_t n = s.next_arity();
                const std::vector<double> x = s.unit_vec(n);
                const double lambda = s.rng().next_double();
                std::vector<double> scaled(n);
                for (std::size_t i = 0; i < n; ++i) scaled[i] = lambda * x[i];
                const double a = gm::h_theta_apply(combiner, x);
                const double b = gm::h_theta_apply(combiner, scaled);
                if (std::fabs(lambda * a - b) > 1e-9) {
                    witness = combiner.label() + "(" + std::to_string(lambda) + " * x) = " +
                              std::to_string(b) + " != lambda * " + std::to_string(a) +
                              " for x" + format_vec(x);
                    return false;
                }
                return true;
            }));

        results.push_back(run_property(
            "shift_invariance" + tag, opts, salt++,
            [&combiner](Sampler& s, std::string& witness) {
                const std::size_t n = s.next_arity();
                const std::vector<double> x = s.unit_vec(n);
                const double lo = agg::agg_min(x), hi = agg::agg_max(x);
                const double lambda = s.rng().next_double(-lo, 1.0 - hi);
                std::vector<double> shifted(n);
                for (std::size_t i = 0; i < n; ++i) shifted[i] = x[i] + lambda;
                const double a = gm::h_theta_apply(combiner, x);
                const double b = gm::h_theta_apply(combiner, shifted);
                if (std::fabs(a + lambda - b) > 1e-9) {
                    witness = combiner.label() + "(x + " + std::to_string(lambda) + ") = " +
                              std::to_string(b) + " != " + std::to_string(a + lambda) +
                              " for x" + format_vec(x);
                    return false;
                }
                return true;
            }));

        results.push_back(run_property(
            "permutation_symmetry" + tag, opts, salt++,
            [&combiner](Sampler& s, std::string& witness) {
                const std::size_t n = s.next_arity();
                const std::vector<double> x = s.unit_vec(n);
                std::vector<double> perm = x;
                s.rng().shuffle(perm);
                const double a = gm::h_theta_apply(combiner, x);
                const double b = gm::h_theta_apply(combiner, perm);
                if (std::fabs(a - b) > 1e-9) {
                    witness = combiner.label() + format_vec(x) + " != " + combiner.label() +
                              format_vec(perm);
                    return false;
                }
                return true;
            }));

        // Sampled (1,...,1)-monotonicity: the pre-aggregation direction.
        {
            PropertyResult r;
            r.name = "directional_monotonicity_ones" + tag;
            const std::size_t arity_span = opts.max_arity - opts.min_arity + 1;
            const std::size_t per_arity = std::max<std::size_t>(1, opts.samples / arity_span);
            const std::array<double, 4> steps = {0.0, 1e-3, 0.05, 0.3};
            for (std::size_t n = opts.min_arity; n <= opts.max_arity && r.passed; ++n) {
                const agg::DirectionVector dir(std::vector<double>(n, 1.0));
                const auto report = agg::check_directional_monotonicity(
                    [&combiner](std::span<const double> x) {
                        return gm::h_theta_apply(combiner, x);
                    },
                    dir, per_arity, steps, derive_seed(opts.seed, "dirmono", {salt, n}));
                r.checks += report.comparisons;
                if (!report.passed) {
                    r.passed = false;
                    r.witness = report.witness->describe();
                }
            }
            ++salt;
            results.push_back(std::move(r));
        }

        // Two-step Algorithm (weights then weighted sum) equals the closed form.
        results.push_back(run_property(
            "oracle_equivalence" + tag, opts, salt++,
            [&combiner](Sampler& s, std::string& witness) {
                const std::size_t n = s.next_arity();
                const std::vector<double> x = s.unit_vec(n);
                const agg::WeightVector w = gm::weights_calc(x, combiner.selector());
                const double two_step = kernels::dot(w.weights(), x);
                const double closed = gm::h_theta_apply(combiner, x);
                if (std::fabs(two_step - closed) > 1e-12) {
                    witness = "two-step " + std::to_string(two_step) + " != closed form " +
                              std::to_string(closed) + " for x" + format_vec(x);
                    return false;
                }
                return true;
            }));

        results.push_back(run_property(
            "no_zero_one_divisors" + tag, opts, salt++,
            [&combiner](Sampler& s, std::string& witness) {
                const std::size_t n = s.next_arity();
                std::vector<double> pos(n), sub_one(n);
                for (double& v : pos) v = 1.0 - s.rng().next_double();   // (0, 1]
                for (double& v : sub_one) v = s.rng().next_double();     // [0, 1)
                const double a = gm::h_theta_apply(combiner, pos);
                const double b = gm::h_theta_apply(combiner, sub_one);
                if (!(a > 0.0)) {
                    witness = combiner.label() + format_vec(pos) + " = 0 on positive input";
                    return false;
                }
                if (!(b < 1.0)) {
                    witness = combiner.label() + format_vec(sub_one) + " = 1 on input < 1";
                    return false;
                }
                return true;
            }));
    }

    // The known coordinatewise-monotonicity violation of the ratio GM must be
    // detected and reported with exactly the published pair as witness.
    {
        PropertyResult r;
        r.name = "ratio_gm_violation_detected";
        const gm::WeightFunctionFamily ratio = ratio_family3();
        const std::vector<std::vector<double>> base = {{0.5, 0.2, 0.1}};
        const std::array<double, 1> steps = {1.0};
        const agg::DirectionVector dir({0.0, 0.02, 0.1});
        const auto report = agg::check_directional_monotonicity(
            [&ratio](std::span<const double> x) { return gm::gm_apply(ratio, x); }, dir,
            0, steps, 0, base);
        r.checks = report.comparisons;
        if (report.passed || !report.witness) {
            r.passed = false;
            r.witness = "violation not detected";
        } else {
            const auto& w = *report.witness;
            const bool right_pair = std::fabs(w.fx - 0.375) < 5e-4 &&
                                    std::fabs(w.fx_stepped - 0.367826) < 5e-4;
            if (!right_pair) {
                r.passed = false;
                r.witness = "unexpected witness: " + w.describe();
            }
        }
        results.push_back(std::move(r));
    }

    return results;
}

} // namespace gmfuse::props

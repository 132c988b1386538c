#include "gmfuse/stats.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include <boost/math/distributions/chi_squared.hpp>

#include "gmfuse/error.hpp"

namespace gmfuse::eval {

namespace {

// Average ranks of one block, rank 1 for the highest value, ties averaged.
std::vector<double> rank_block(const std::vector<double>& values) {
    const std::size_t m = values.size();
    std::vector<std::size_t> order(m);
    for (std::size_t i = 0; i < m; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&values](std::size_t a, std::size_t b) { return values[a] > values[b]; });
    std::vector<double> ranks(m, 0.0);
    std::size_t pos = 0;
    while (pos < m) {
        std::size_t end = pos;
        while (end + 1 < m && values[order[end + 1]] == values[order[pos]]) ++end;
        const double avg = 0.5 * static_cast<double>(pos + 1 + end + 1);
        for (std::size_t i = pos; i <= end; ++i) ranks[order[i]] = avg;
        pos = end + 1;
    }
    return ranks;
}

// Nemenyi critical values q_alpha(m) (studentized range at infinite degrees
// of freedom divided by sqrt(2)) for m = 2..20 methods.
constexpr std::array<double, 19> kNemenyiQ01 = {
    2.575829, 2.913494, 3.113250, 3.254686, 3.363740, 3.452213, 3.526471,
    3.590339, 3.646292, 3.696021, 3.740733, 3.781318, 3.818451, 3.852654,
    3.884343, 3.913850, 3.941446, 3.967357, 3.991770};
constexpr std::array<double, 19> kNemenyiQ05 = {
    1.959964, 2.343701, 2.569032, 2.727774, 2.849705, 2.948320, 3.030878,
    3.101730, 3.163684, 3.218654, 3.268004, 3.312739, 3.353618, 3.391230,
    3.426041, 3.458425, 3.488685, 3.517073, 3.543799};

double nemenyi_q(double alpha, std::size_t m) {
    if (m < 2 || m > 20) {
        throw ConfigError("nemenyi_posthoc: supported method counts are 2..20, got " +
                          std::to_string(m));
    }
    if (alpha == 0.01) return kNemenyiQ01[m - 2];
    if (alpha == 0.05) return kNemenyiQ05[m - 2];
    throw ConfigError("nemenyi_posthoc: supported significance levels are 0.01 and 0.05");
}

} // namespace

FriedmanResult friedman_test(const MethodValues& values) {
    const std::size_t m = values.size();
    if (m < 2) throw ConfigError("friedman_test: needs at least 2 methods");
    const std::size_t n = values.begin()->second.size();
    if (n < 2) throw ConfigError("friedman_test: needs at least 2 blocks");
    for (const auto& [name, v] : values) {
        if (v.size() != n) {
            throw ConfigError("friedman_test: method '" + name + "' has " +
                              std::to_string(v.size()) + " blocks, expected " +
                              std::to_string(n));
        }
    }

    std::vector<double> rank_sums(m, 0.0);
    std::vector<double> block(m);
    for (std::size_t b = 0; b < n; ++b) {
        std::size_t j = 0;
        for (const auto& [name, v] : values) block[j++] = v[b];
        const std::vector<double> ranks = rank_block(block);
        for (std::size_t i = 0; i < m; ++i) rank_sums[i] += ranks[i];
    }

    FriedmanResult result;
    result.methods = m;
    result.blocks = n;
    const double dm = static_cast<double>(m);
    const double dn = static_cast<double>(n);
    double sum_sq = 0.0;
    for (const double r : rank_sums) sum_sq += r * r;
    result.statistic = 12.0 / (dn * dm * (dm + 1.0)) * sum_sq - 3.0 * dn * (dm + 1.0);
    // Guard tiny negative values from floating cancellation.
    if (result.statistic < 0.0 && result.statistic > -1e-9) result.statistic = 0.0;

    const boost::math::chi_squared dist(dm - 1.0);
    result.p_value = boost::math::cdf(boost::math::complement(dist, result.statistic));

    std::size_t j = 0;
    for (const auto& [name, v] : values) {
        result.avg_ranks[name] = rank_sums[j++] / dn;
    }
    return result;
}

StatReport nemenyi_posthoc(const MethodValues& values, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw ConfigError("nemenyi_posthoc: alpha must lie in (0,1)");
    }
    StatReport report;
    report.alpha = alpha;
    report.friedman = friedman_test(values);
    const std::size_t m = report.friedman.methods;
    const std::size_t n = report.friedman.blocks;
    const double q = nemenyi_q(alpha, m);
    report.critical_difference =
        q * std::sqrt(static_cast<double>(m) * (static_cast<double>(m) + 1.0) /
                      (12.0 * static_cast<double>(n)));

    const bool rejected = report.friedman.p_value < alpha;
    for (const auto& [a, rank_a] : report.friedman.avg_ranks) {
        for (const auto& [b, rank_b] : report.friedman.avg_ranks) {
            if (a == b) continue;
            PairOutcome outcome = PairOutcome::draw;
            if (rejected && std::fabs(rank_a - rank_b) > report.critical_difference) {
                outcome = rank_a < rank_b ? PairOutcome::win : PairOutcome::loss;
            }
            report.pairwise[{a, b}] = outcome;
        }
    }
    return report;
}

std::map<std::pair<std::string, std::string>, WdlCell> win_draw_loss(
    const std::vector<StatReport>& per_dataset_reports,
    const std::vector<std::string>& proposed, const std::vector<std::string>& baselines) {
    std::map<std::pair<std::string, std::string>, WdlCell> cells;
    for (const std::string& p : proposed) {
        for (const std::string& b : baselines) {
            WdlCell cell;
            for (const StatReport& report : per_dataset_reports) {
                const auto it = report.pairwise.find({p, b});
                if (it == report.pairwise.end()) {
                    throw ConfigError("win_draw_loss: method pair (" + p + ", " + b +
                                      ") missing from a dataset report");
                }
                switch (it->second) {
                    case PairOutcome::win: ++cell.wins; break;
                    case PairOutcome::draw: ++cell.draws; break;
                    case PairOutcome::loss: ++cell.losses; break;
                }
            }
            cells[{p, b}] = cell;
        }
    }
    return cells;
}

std::string format_wdl_grid(
    const std::map<std::pair<std::string, std::string>, WdlCell>& cells,
    const std::vector<std::string>& proposed, const std::vector<std::string>& baselines) {
    std::ostringstream os;
    std::size_t width = 10;
    for (const std::string& p : proposed) width = std::max(width, p.size() + 2);
    os << std::string(width, ' ');
    for (const std::string& b : baselines) {
        os << b;
        os << std::string(b.size() < 14 ? 14 - b.size() : 2, ' ');
    }
    os << "\n";
    for (const std::string& p : proposed) {
        os << p << std::string(width - p.size(), ' ');
        for (const std::string& b : baselines) {
            const WdlCell& cell = cells.at({p, b});
            std::string text = std::to_string(cell.wins) + " - " + std::to_string(cell.draws) +
                               " - " + std::to_string(cell.losses);
            os << text;
            os << std::string(text.size() < 14 ? 14 - text.size() : 2, ' ');
        }
        os << "\n";
    }
    return os.str();
}

} // namespace gmfuse::eval

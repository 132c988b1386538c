#include "gmfuse/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <sstream>
#include <thread>

#include "gmfuse/error.hpp"
#include "gmfuse/folds.hpp"

namespace gmfuse::eval {

namespace {

double now_seconds() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

std::string format_double(double v, const char* fmt) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), fmt, v);
    return buf;
}

} // namespace

void ExperimentConfig::validate() const {
    if (datasets.empty()) throw ConfigError("config: at least one dataset is required");
    if (sizes.empty()) throw ConfigError("config: at least one ensemble size is required");
    for (const std::size_t s : sizes) {
        if (s < 2) throw ConfigError("config: ensemble sizes must be at least 2");
    }
    if (combiners.empty()) throw ConfigError("config: at least one combiner is required");
    const auto& allowed = fusion::experiment_combiner_names();
    for (const std::string& name : combiners) {
        if (std::find(allowed.begin(), allowed.end(), name) == allowed.end()) {
            std::string list;
            for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
            throw ConfigError("config: unknown combiner '" + name +
                              "'; supported combiners: " + list);
        }
    }
    if (folds < 2) throw ConfigError("config: folds must be at least 2");
    if (repeats < 1) throw ConfigError("config: repeats must be at least 1");
}

std::vector<double> ResultTable::cell_accuracies(std::size_t dataset, std::size_t size_idx,
                                                 std::size_t combiner) const {
    std::vector<double> acc;
    for (const RunRecord& r : records) {
        if (r.dataset == dataset && r.size == sizes[size_idx] && r.combiner == combiner) {
            acc.push_back(r.accuracy);
        }
    }
    return acc;
}

ResultTable::CellStats ResultTable::cell_stats(std::size_t dataset, std::size_t size_idx,
                                               std::size_t combiner) const {
    const std::vector<double> acc = cell_accuracies(dataset, size_idx, combiner);
    CellStats stats;
    stats.runs = acc.size();
    if (acc.empty()) return stats;
    double sum = 0.0;
    for (const double a : acc) sum += a;
    stats.mean = sum / static_cast<double>(acc.size());
    if (acc.size() > 1) {
        double ss = 0.0;
        for (const double a : acc) ss += (a - stats.mean) * (a - stats.mean);
        stats.stddev = std::sqrt(ss / static_cast<double>(acc.size() - 1));
    }
    return stats;
}

MethodValues ResultTable::method_values(std::size_t dataset, std::size_t size_idx) const {
    MethodValues values;
    for (std::size_t c = 0; c < combiner_names.size(); ++c) {
        values[combiner_names[c]] = cell_accuracies(dataset, size_idx, c);
    }
    return values;
}

void ResultTable::write_csv(std::ostream& os, bool with_seconds) const {
    os << "dataset,size,combiner,run,fold,accuracy";
    if (with_seconds) os << ",seconds";
    os << "\n";
    for (const RunRecord& r : records) {
        os << dataset_names[r.dataset] << ',' << r.size << ',' << combiner_names[r.combiner]
           << ',' << r.repeat << ',' << r.fold << ',' << format_double(r.accuracy, "%.17g");
        if (with_seconds) os << ',' << format_double(r.seconds, "%.6f");
        os << "\n";
    }
}

std::string ResultTable::csv(bool with_seconds) const {
    std::ostringstream os;
    write_csv(os, with_seconds);
    return os.str();
}

std::string ResultTable::summary() const {
    std::ostringstream os;
    for (std::size_t d = 0; d < dataset_names.size(); ++d) {
        os << "== " << dataset_names[d] << " ==\n";
        os << "size    ";
        for (const std::string& c : combiner_names) {
            os << c << std::string(c.size() < 16 ? 16 - c.size() : 2, ' ');
        }
        os << "\n";
        for (std::size_t s = 0; s < sizes.size(); ++s) {
            std::string size_text = std::to_string(sizes[s]);
            os << size_text << std::string(8 - size_text.size(), ' ');
            for (std::size_t c = 0; c < combiner_names.size(); ++c) {
                const CellStats stats = cell_stats(d, s, c);
                std::string cell = stats.runs == 0
                                       ? std::string("(failed)")
                                       : format_double(stats.mean, "%.4f") + " \xC2\xB1 " +
                                             format_double(stats.stddev, "%.4f");
                // The +/- sign is 2 bytes of UTF-8; pad on visible length.
                const std::size_t visible = cell.size() > 2 ? cell.size() - 2 : cell.size();
                os << cell << std::string(visible < 16 ? 16 - visible : 2, ' ');
            }
            os << "\n";
        }
        os << "\n";
    }
    if (!failures.empty()) {
        os << "failed cells:\n";
        for (const CellFailure& f : failures) {
            os << "  " << dataset_names[f.dataset] << " size=" << f.size
               << " repeat=" << f.repeat << " fold=" << f.fold << ": " << f.message << "\n";
        }
    }
    return os.str();
}

std::string ResultTable::timing_report() const {
    std::ostringstream os;
    os << "dataset,size,combiner,seconds\n";
    for (std::size_t d = 0; d < dataset_names.size(); ++d) {
        for (std::size_t s = 0; s < sizes.size(); ++s) {
            for (std::size_t c = 0; c < combiner_names.size(); ++c) {
                double total = 0.0;
                for (const RunRecord& r : records) {
                    if (r.dataset == d && r.size == sizes[s] && r.combiner == c) {
                        total += r.seconds;
                    }
                }
                os << dataset_names[d] << ',' << sizes[s] << ',' << combiner_names[c] << ','
                   << format_double(total, "%.6f") << "\n";
            }
        }
    }
    return os.str();
}

namespace {

struct CellTask {
    std::size_t dataset = 0;
    std::size_t size_idx = 0;
    std::size_t repeat = 0;
    std::size_t fold = 0;
};

struct CellOutput {
    bool failed = false;
    std::string error;
    std::vector<double> accuracy;  // per combiner
    std::vector<double> seconds;   // per combiner
};

} // namespace

ResultTable run_experiment(const ExperimentConfig& config,
                           const std::vector<data::Dataset>& datasets) {
    config.validate();
    if (datasets.size() != config.datasets.size()) {
        throw ConfigError("run_experiment: dataset list does not match config");
    }

    std::vector<fusion::Combiner> combiners;
    for (const std::string& name : config.combiners) {
        combiners.push_back(fusion::parse_combiner(name));
    }

    ResultTable table;
    for (const auto& d : datasets) table.dataset_names.push_back(d.name);
    table.sizes = config.sizes;
    table.combiner_names = config.combiners;

    // Fold plans per (dataset, repeat); shared by all sizes so combiners and
    // sizes see identical splits.
    std::vector<std::vector<FoldPlan>> plans(datasets.size());
    for (std::size_t d = 0; d < datasets.size(); ++d) {
        for (std::size_t r = 0; r < config.repeats; ++r) {
            plans[d].push_back(stratified_kfold(
                datasets[d], config.folds, derive_seed(config.seed, "folds", {d, r})));
        }
    }

    std::vector<CellTask> tasks;
    for (std::size_t d = 0; d < datasets.size(); ++d) {
        for (std::size_t s = 0; s < config.sizes.size(); ++s) {
            for (std::size_t r = 0; r < config.repeats; ++r) {
                for (std::size_t f = 0; f < config.folds; ++f) {
                    tasks.push_back({d, s, r, f});
                }
            }
        }
    }
    std::vector<CellOutput> outputs(tasks.size());

    const auto run_task = [&](std::size_t t) {
        const CellTask& task = tasks[t];
        CellOutput& out = outputs[t];
        const data::Dataset& dataset = datasets[task.dataset];
        const std::size_t size = config.sizes[task.size_idx];
        try {
            const FoldPlan& plan = plans[task.dataset][task.repeat];
            const std::vector<std::size_t> train_rows = plan.train_rows(task.fold);
            const std::vector<std::size_t> test_rows = plan.test_rows(task.fold);
            if (test_rows.empty()) throw DataError("empty test fold");

            ensemble::EnsembleConfig ens_config;
            ens_config.size = size;
            ens_config.hyper = config.hyper;
            const std::uint64_t cell_seed = derive_seed(
                config.seed, "ensemble", {task.dataset, size, task.repeat, task.fold});

            const double t_train0 = now_seconds();
            const ensemble::Ensemble ens = ensemble::Ensemble::train(
                dataset, train_rows, ens_config, combiners.front(), config.tie_policy,
                cell_seed);
            const double train_seconds = now_seconds() - t_train0;

            const std::size_t n_comb = combiners.size();
            std::vector<std::size_t> correct(n_comb, 0);
            std::vector<double> fuse_seconds(n_comb, 0.0);
            std::vector<Rng> tie_rngs;
            for (std::size_t c = 0; c < n_comb; ++c) {
                tie_rngs.emplace_back(derive_seed(
                    config.seed, "tie", {task.dataset, size, task.repeat, task.fold, c}));
            }
            double score_seconds = 0.0;
            for (const std::size_t row : test_rows) {
                const double t_score0 = now_seconds();
                const fusion::ScoreMatrix scores = ens.member_scores(dataset, row);
                score_seconds += now_seconds() - t_score0;
                for (std::size_t c = 0; c < n_comb; ++c) {
                    const double t_fuse0 = now_seconds();
                    const fusion::Prediction pred =
                        fusion::classify(scores, combiners[c], config.tie_policy, tie_rngs[c]);
                    fuse_seconds[c] += now_seconds() - t_fuse0;
                    if (pred.class_index ==
                        static_cast<std::size_t>(dataset.labels[row])) {
                        ++correct[c];
                    }
                }
            }
            out.accuracy.resize(n_comb);
            out.seconds.resize(n_comb);
            for (std::size_t c = 0; c < n_comb; ++c) {
                out.accuracy[c] =
                    static_cast<double>(correct[c]) / static_cast<double>(test_rows.size());
                out.seconds[c] = train_seconds + score_seconds + fuse_seconds[c];
            }
        } catch (const std::exception& e) {
            out.failed = true;
            out.error = e.what();
        }
    };

    std::size_t thread_count = config.threads;
    if (thread_count == 0) {
        thread_count = std::max(1u, std::thread::hardware_concurrency());
    }
    if (thread_count <= 1 || tasks.size() <= 1) {
        for (std::size_t t = 0; t < tasks.size(); ++t) run_task(t);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < std::min(thread_count, tasks.size()); ++w) {
            pool.emplace_back([&] {
                for (std::size_t t = next.fetch_add(1); t < tasks.size();
                     t = next.fetch_add(1)) {
                    run_task(t);
                }
            });
        }
        for (std::thread& th : pool) th.join();
    }

    // Canonical record order: (dataset, size, combiner, repeat, fold).
    for (std::size_t d = 0; d < datasets.size(); ++d) {
        for (std::size_t s = 0; s < config.sizes.size(); ++s) {
            for (std::size_t c = 0; c < combiners.size(); ++c) {
                for (std::size_t t = 0; t < tasks.size(); ++t) {
                    const CellTask& task = tasks[t];
                    if (task.dataset != d || task.size_idx != s) continue;
                    const CellOutput& out = outputs[t];
                    if (out.failed) continue;
                    RunRecord rec;
                    rec.dataset = d;
                    rec.size = config.sizes[s];
                    rec.combiner = c;
                    rec.repeat = task.repeat;
                    rec.fold = task.fold;
                    rec.accuracy = out.accuracy[c];
                    rec.seconds = out.seconds[c];
                    table.records.push_back(rec);
                }
            }
        }
    }
    for (std::size_t t = 0; t < tasks.size(); ++t) {
        if (outputs[t].failed) {
            table.failures.push_back({tasks[t].dataset, config.sizes[tasks[t].size_idx],
                                      tasks[t].repeat, tasks[t].fold, outputs[t].error});
        }
    }
    return table;
}

std::string stats_grid(const ResultTable& table, double alpha) {
    std::ostringstream os;
    std::vector<std::string> proposed, baselines;
    for (const std::string& name : table.combiner_names) {
        (name.rfind("h_", 0) == 0 ? proposed : baselines).push_back(name);
    }
    if (table.combiner_names.size() < 2) {
        return "(statistical comparison needs at least 2 combiners)\n";
    }
    for (std::size_t s = 0; s < table.sizes.size(); ++s) {
        os << "== ensembles with " << table.sizes[s] << " members ==\n";
        std::vector<StatReport> reports;
        bool usable = true;
        for (std::size_t d = 0; d < table.dataset_names.size(); ++d) {
            MethodValues values = table.method_values(d, s);
            const std::size_t runs = values.begin()->second.size();
            for (const auto& [name, acc] : values) {
                if (acc.size() != runs || runs < 2) usable = false;
            }
            if (!usable) break;
            reports.push_back(nemenyi_posthoc(values, alpha));
        }
        if (!usable) {
            os << "(skipped: incomplete runs)\n\n";
            continue;
        }
        for (std::size_t d = 0; d < table.dataset_names.size(); ++d) {
            os << table.dataset_names[d]
               << ": Friedman chi2 = " << format_double(reports[d].friedman.statistic, "%.4f")
               << ", p = " << format_double(reports[d].friedman.p_value, "%.6g")
               << (reports[d].friedman.p_value < alpha ? " (rejected)" : " (not rejected)")
               << ", CD = " << format_double(reports[d].critical_difference, "%.4f") << "\n";
        }
        // Mean of the per-dataset average ranks, rank 1 = best.
        os << "average ranks:";
        for (const std::string& name : table.combiner_names) {
            double sum = 0.0;
            for (const StatReport& report : reports) sum += report.friedman.avg_ranks.at(name);
            os << " " << name << " = "
               << format_double(sum / static_cast<double>(reports.size()), "%.3f");
        }
        os << "\n";
        if (!proposed.empty() && !baselines.empty()) {
            os << "win - draw - loss (rows vs columns, alpha = "
               << format_double(alpha, "%g") << "):\n";
            os << format_wdl_grid(win_draw_loss(reports, proposed, baselines), proposed,
                                  baselines);
        }
        os << "\n";
    }
    return os.str();
}

} // namespace gmfuse::eval

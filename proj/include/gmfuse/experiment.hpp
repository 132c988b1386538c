#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "gmfuse/dataset.hpp"
#include "gmfuse/ensemble.hpp"
#include "gmfuse/stats.hpp"

namespace gmfuse::eval {

struct DatasetRef {
    std::string path;
    std::string label_column = "class";
};

struct ExperimentConfig {
    std::vector<DatasetRef> datasets;
    std::vector<std::size_t> sizes;
    std::vector<std::string> combiners;
    std::size_t folds = 10;
    std::size_t repeats = 10;
    std::uint64_t seed = 1;
    fusion::TiePolicy tie_policy = fusion::TiePolicy::lowest_index;
    std::string output_dir = "out";
    std::size_t threads = 0;  // 0 = hardware concurrency, 1 = serial
    double stats_alpha = 0.01;
    ensemble::Hyperparams hyper;

    void validate() const;  // throws ConfigError
};

struct RunRecord {
    std::size_t dataset = 0;
    std::size_t size = 0;
    std::size_t combiner = 0;
    std::size_t repeat = 0;
    std::size_t fold = 0;
    double accuracy = 0.0;
    double seconds = 0.0;
};

struct CellFailure {
    std::size_t dataset = 0;
    std::size_t size = 0;
    std::size_t repeat = 0;
    std::size_t fold = 0;
    std::string message;
};

class ResultTable {
public:
    std::vector<std::string> dataset_names;
    std::vector<std::size_t> sizes;
    std::vector<std::string> combiner_names;
    std::vector<RunRecord> records;  // canonical (dataset, size, combiner, repeat, fold) order
    std::vector<CellFailure> failures;

    struct CellStats {
        double mean = 0.0;
        double stddev = 0.0;
        std::size_t runs = 0;
    };

    // Accuracies of one (dataset, size, combiner) cell ordered by (repeat, fold).
    std::vector<double> cell_accuracies(std::size_t dataset, std::size_t size_idx,
                                        std::size_t combiner) const;
    CellStats cell_stats(std::size_t dataset, std::size_t size_idx, std::size_t combiner) const;

    // Per-run accuracy vectors of every combiner for one (dataset, size):
    // the matched blocks handed to the statistical tests.
    MethodValues method_values(std::size_t dataset, std::size_t size_idx) const;

    void write_csv(std::ostream& os, bool with_seconds = true) const;
    std::string csv(bool with_seconds = true) const;
    std::string summary() const;
    std::string timing_report() const;
};

// Full protocol: for every (dataset, size, repeat, fold) cell, train one
// member pool on the 9 training folds and evaluate every configured combiner
// on the held-out fold. Cells run in parallel when threads != 1; scheduling
// cannot change the table (per-cell seeds, preallocated slots).
ResultTable run_experiment(const ExperimentConfig& config,
                           const std::vector<data::Dataset>& datasets);

// Per-size statistical comparison: for each dataset, Friedman + Nemenyi over
// the per-run accuracies of all combiners; aggregated into the x-y-z grid of
// dynamic combiners (rows) against static baselines (columns).
std::string stats_grid(const ResultTable& table, double alpha);

} // namespace gmfuse::eval

#pragma once

#include <cmath>
#include <span>
#include <string>
#include <vector>

namespace gmfuse::data {

enum class FeatureKind { numeric, categorical };

struct FeatureInfo {
    std::string name;
    FeatureKind kind = FeatureKind::numeric;
    // Dictionary for categorical columns; cell values index into it.
    std::vector<std::string> categories;
};

// Labeled tabular dataset. Cells are stored as doubles: numeric columns hold
// the value itself, categorical columns hold the category index, missing
// cells hold NaN.
class Dataset {
public:
    std::string name;
    std::vector<FeatureInfo> features;
    std::vector<std::string> class_labels;
    std::vector<double> cells;   // row-major, n_rows x features.size()
    std::vector<int> labels;     // class index per row

    std::size_t n_rows() const { return labels.size(); }
    std::size_t n_features() const { return features.size(); }

    std::span<const double> row(std::size_t i) const {
        return {cells.data() + i * n_features(), n_features()};
    }

    static bool is_missing(double cell) { return std::isnan(cell); }

    // Fraction of instances carrying the most frequent label.
    double majority_class_fraction() const;

    // True when both schemas describe the same feature layout.
    bool schema_matches(const Dataset& other) const;
};

} // namespace gmfuse::data

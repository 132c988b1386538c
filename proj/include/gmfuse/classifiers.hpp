#pragma once

#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "gmfuse/dataset.hpp"
#include "gmfuse/rng.hpp"

// First layer of the ensemble: the five member families, all emitting
// normalized posterior rows.

namespace gmfuse::ensemble {

struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

    std::span<double> row(std::size_t i) { return {data.data() + i * cols, cols}; }
    std::span<const double> row(std::size_t i) const { return {data.data() + i * cols, cols}; }
};

// Train-fold feature pipeline: numeric features are mean-imputed and
// standardized, categorical features are mode-imputed and one-hot encoded.
// Categories unseen during fitting encode as an all-zero block.
class Preprocessor {
public:
    void fit(const data::Dataset& d, std::span<const std::size_t> rows);
    std::size_t out_dim() const { return out_dim_; }
    bool fitted() const { return fitted_; }

    void transform(const data::Dataset& d, std::size_t row, std::span<double> out) const;
    Matrix transform_rows(const data::Dataset& d, std::span<const std::size_t> rows) const;

private:
    struct NumericStats {
        double mean = 0.0;
        double inv_sigma = 0.0;  // 0 disables a constant feature
    };
    struct ColumnPlan {
        data::FeatureKind kind = data::FeatureKind::numeric;
        std::size_t out_offset = 0;
        NumericStats numeric;
        std::size_t category_count = 0;  // width of the one-hot block
        double impute_value = 0.0;       // mean or mode index
    };

    std::vector<ColumnPlan> columns_;
    std::vector<double> mu_;         // per output slot, numeric fast path
    std::vector<double> inv_sigma_;  // per output slot, numeric fast path
    bool all_numeric_ = false;
    std::size_t out_dim_ = 0;
    bool fitted_ = false;
};

struct Hyperparams {
    std::size_t knn_k = 5;
    std::size_t tree_max_depth = 12;
    std::size_t tree_min_leaf = 2;
    double nb_variance_floor = 1e-9;
    std::size_t linear_epochs = 200;
    double linear_learning_rate = 0.1;
    double linear_l2 = 1e-4;
    // Posterior rows are pulled away from exact 0/1 by this amount and
    // renormalized, so product fusion never annihilates on one member.
    double posterior_floor = 1e-6;
};

enum class Family { knn, decision_tree, gaussian_nb, logistic_regression, perceptron };

std::string_view family_name(Family family);
Family parse_family(std::string_view name);

class BaseClassifier {
public:
    virtual ~BaseClassifier() = default;

    virtual void fit(const Matrix& x, std::span<const int> y, std::size_t n_classes,
                     Rng& rng) = 0;
    // Writes a normalized posterior row of length n_classes.
    virtual void predict_proba(std::span<const double> x, std::span<double> out) const = 0;
    virtual Family family() const = 0;

    bool fitted() const { return fitted_; }

protected:
    void require_fitted() const;
    void mark_fitted() { fitted_ = true; }

private:
    bool fitted_ = false;
};

std::unique_ptr<BaseClassifier> make_classifier(Family family, const Hyperparams& hp);

// (p + eps) / (1 + n*eps), in place.
void smooth_posteriors(std::span<double> row, double eps);

} // namespace gmfuse::ensemble

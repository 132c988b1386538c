#include "gmfuse/classifiers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "gmfuse/error.hpp"
#include "gmfuse/kernels.hpp"

namespace gmfuse::ensemble {

void Preprocessor::fit(const data::Dataset& d, std::span<const std::size_t> rows) {
    if (rows.empty()) throw DataError("Preprocessor: empty training split");
    columns_.clear();
    out_dim_ = 0;
    all_numeric_ = true;
    for (std::size_t f = 0; f < d.n_features(); ++f) {
        ColumnPlan plan;
        plan.kind = d.features[f].kind;
        plan.out_offset = out_dim_;
        if (plan.kind == data::FeatureKind::numeric) {
            double sum = 0.0, sum_sq = 0.0;
            std::size_t count = 0;
            for (const std::size_t r : rows) {
                const double v = d.row(r)[f];
                if (data::Dataset::is_missing(v)) continue;
                sum += v;
                sum_sq += v * v;
                ++count;
            }
            const double mean = count ? sum / static_cast<double>(count) : 0.0;
            const double var =
                count ? std::max(0.0, sum_sq / static_cast<double>(count) - mean * mean) : 0.0;
            const double sigma = std::sqrt(var);
            plan.numeric.mean = mean;
            plan.numeric.inv_sigma = sigma > 1e-12 ? 1.0 / sigma : 0.0;
            plan.impute_value = mean;
            out_dim_ += 1;
        } else {
            all_numeric_ = false;
            plan.category_count = d.features[f].categories.size();
            std::vector<std::size_t> counts(plan.category_count, 0);
            for (const std::size_t r : rows) {
                const double v = d.row(r)[f];
                if (data::Dataset::is_missing(v)) continue;
                ++counts[static_cast<std::size_t>(v)];
            }
            const auto mode =
                std::max_element(counts.begin(), counts.end()) - counts.begin();
            plan.impute_value = static_cast<double>(mode);
            out_dim_ += plan.category_count;
        }
        columns_.push_back(plan);
    }
    if (all_numeric_) {
        mu_.resize(out_dim_);
        inv_sigma_.resize(out_dim_);
        for (std::size_t f = 0; f < columns_.size(); ++f) {
            mu_[f] = columns_[f].numeric.mean;
            inv_sigma_[f] = columns_[f].numeric.inv_sigma;
        }
    }
    fitted_ = true;
}

void Preprocessor::transform(const data::Dataset& d, std::size_t row,
                             std::span<double> out) const {
    if (!fitted_) throw StateError("Preprocessor: transform before fit");
    if (d.n_features() != columns_.size()) {
        throw DataError("Preprocessor: instance has " + std::to_string(d.n_features()) +
                        " features, expected " + std::to_string(columns_.size()));
    }
    const std::span<const double> raw = d.row(row);
    if (all_numeric_) {
        // Impute into the output buffer, then standardize in place.
        for (std::size_t f = 0; f < columns_.size(); ++f) {
            const double v = raw[f];
            out[f] = data::Dataset::is_missing(v) ? columns_[f].impute_value : v;
        }
        kernels::standardize(out, mu_, inv_sigma_, out);
        return;
    }
    for (std::size_t f = 0; f < columns_.size(); ++f) {
        const ColumnPlan& plan = columns_[f];
        double v = raw[f];
        if (data::Dataset::is_missing(v)) v = plan.impute_value;
        if (plan.kind == data::FeatureKind::numeric) {
            out[plan.out_offset] = (v - plan.numeric.mean) * plan.numeric.inv_sigma;
        } else {
            std::fill_n(out.begin() + plan.out_offset, plan.category_count, 0.0);
            const auto idx = static_cast<std::size_t>(v);
            if (idx < plan.category_count) out[plan.out_offset + idx] = 1.0;
        }
    }
}

Matrix Preprocessor::transform_rows(const data::Dataset& d,
                                    std::span<const std::size_t> rows) const {
    Matrix m(rows.size(), out_dim_);
    for (std::size_t i = 0; i < rows.size(); ++i) transform(d, rows[i], m.row(i));
    return m;
}

std::string_view family_name(Family family) {
    switch (family) {
        case Family::knn: return "knn";
        case Family::decision_tree: return "tree";
        case Family::gaussian_nb: return "nb";
        case Family::logistic_regression: return "logreg";
        case Family::perceptron: return "perceptron";
    }
    return "?";
}

Family parse_family(std::string_view name) {
    if (name == "knn") return Family::knn;
    if (name == "tree") return Family::decision_tree;
    if (name == "nb") return Family::gaussian_nb;
    if (name == "logreg") return Family::logistic_regression;
    if (name == "perceptron") return Family::perceptron;
    throw ConfigError("unknown classifier family '" + std::string(name) +
                      "'; supported: knn, tree, nb, logreg, perceptron");
}

void BaseClassifier::require_fitted() const {
    if (!fitted_) throw StateError("classifier used before fit()");
}

void smooth_posteriors(std::span<double> row, double eps) {
    const double denom = 1.0 + eps * static_cast<double>(row.size());
    for (double& v : row) v = (v + eps) / denom;
}

namespace {

// ---------------------------------------------------------------------------
// k-nearest neighbors with Euclidean distance on the preprocessed features.

class KnnClassifier final : public BaseClassifier {
public:
    explicit KnnClassifier(const Hyperparams& hp) : hp_(hp) {}

    void fit(const Matrix& x, std::span<const int> y, std::size_t n_classes, Rng&) override {
        x_ = x;
        y_.assign(y.begin(), y.end());
        n_classes_ = n_classes;
        k_ = std::max<std::size_t>(1, std::min(hp_.knn_k, x.rows));
        mark_fitted();
    }

    void predict_proba(std::span<const double> x, std::span<double> out) const override {
        require_fitted();
        std::vector<std::pair<double, std::size_t>> dist(x_.rows);
        for (std::size_t i = 0; i < x_.rows; ++i) {
            dist[i] = {kernels::sq_dist(x_.row(i), x), i};
        }
        std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k_),
                          dist.end());
        std::fill(out.begin(), out.end(), 0.0);
        for (std::size_t i = 0; i < k_; ++i) {
            out[static_cast<std::size_t>(y_[dist[i].second])] += 1.0;
        }
        for (double& v : out) v /= static_cast<double>(k_);
        smooth_posteriors(out, hp_.posterior_floor);
    }

    Family family() const override { return Family::knn; }

private:
    Hyperparams hp_;
    Matrix x_;
    std::vector<int> y_;
    std::size_t n_classes_ = 0;
    std::size_t k_ = 1;
};

// ---------------------------------------------------------------------------
// CART decision tree, Gini impurity, exact splits; leaves hold
// Laplace-smoothed class frequencies.

class TreeClassifier final : public BaseClassifier {
public:
    explicit TreeClassifier(const Hyperparams& hp) : hp_(hp) {}

    void fit(const Matrix& x, std::span<const int> y, std::size_t n_classes, Rng&) override {
        x_ = &x;
        y_ = y;
        n_classes_ = n_classes;
        nodes_.clear();
        leaf_probs_.clear();
        std::vector<std::size_t> indices(x.rows);
        std::iota(indices.begin(), indices.end(), 0);
        build(indices, 0);
        x_ = nullptr;
        y_ = {};
        mark_fitted();
    }

    void predict_proba(std::span<const double> x, std::span<double> out) const override {
        require_fitted();
        std::size_t node = 0;
        while (!nodes_[node].is_leaf) {
            const Node& n = nodes_[node];
            node = x[n.feature] <= n.threshold ? n.left : n.right;
        }
        const std::size_t offset = nodes_[node].leaf_offset;
        std::copy_n(leaf_probs_.begin() + static_cast<std::ptrdiff_t>(offset), n_classes_,
                    out.begin());
        smooth_posteriors(out, hp_.posterior_floor);
    }

    Family family() const override { return Family::decision_tree; }

private:
    struct Node {
        bool is_leaf = true;
        std::size_t feature = 0;
        double threshold = 0.0;
        std::size_t left = 0;
        std::size_t right = 0;
        std::size_t leaf_offset = 0;
    };

    static double gini(std::span<const double> counts, double total) {
        if (total <= 0.0) return 0.0;
        double sum_sq = 0.0;
        for (const double c : counts) sum_sq += c * c;
        return 1.0 - sum_sq / (total * total);
    }

    std::size_t make_leaf(std::span<const std::size_t> indices) {
        Node node;
        node.is_leaf = true;
        node.leaf_offset = leaf_probs_.size();
        std::vector<double> counts(n_classes_, 0.0);
        for (const std::size_t i : indices) counts[static_cast<std::size_t>(y_[i])] += 1.0;
        const double denom = static_cast<double>(indices.size() + n_classes_);
        for (const double c : counts) leaf_probs_.push_back((c + 1.0) / denom);
        nodes_.push_back(node);
        return nodes_.size() - 1;
    }

    std::size_t build(std::vector<std::size_t>& indices, std::size_t depth) {
        bool pure = true;
        for (std::size_t i = 1; i < indices.size(); ++i) {
            if (y_[indices[i]] != y_[indices[0]]) {
                pure = false;
                break;
            }
        }
        if (pure || depth >= hp_.tree_max_depth || indices.size() < 2 * hp_.tree_min_leaf) {
            return make_leaf(indices);
        }

        const double total = static_cast<double>(indices.size());
        std::size_t best_feature = 0;
        double best_threshold = 0.0;
        double best_impurity = std::numeric_limits<double>::infinity();
        bool found = false;

        std::vector<std::size_t> sorted = indices;
        std::vector<double> left_counts(n_classes_), right_counts(n_classes_);
        for (std::size_t f = 0; f < x_->cols; ++f) {
            std::sort(sorted.begin(), sorted.end(), [&](std::size_t a, std::size_t b) {
                const double va = x_->row(a)[f], vb = x_->row(b)[f];
                return va < vb || (va == vb && a < b);
            });
            std::fill(left_counts.begin(), left_counts.end(), 0.0);
            std::fill(right_counts.begin(), right_counts.end(), 0.0);
            for (const std::size_t i : sorted) {
                right_counts[static_cast<std::size_t>(y_[i])] += 1.0;
            }
            for (std::size_t pos = 0; pos + 1 < sorted.size(); ++pos) {
                const auto cls = static_cast<std::size_t>(y_[sorted[pos]]);
                left_counts[cls] += 1.0;
                right_counts[cls] -= 1.0;
                const double v = x_->row(sorted[pos])[f];
                const double v_next = x_->row(sorted[pos + 1])[f];
                if (v == v_next) continue;
                const std::size_t n_left = pos + 1;
                const std::size_t n_right = sorted.size() - n_left;
                if (n_left < hp_.tree_min_leaf || n_right < hp_.tree_min_leaf) continue;
                const double impurity =
                    (static_cast<double>(n_left) * gini(left_counts, static_cast<double>(n_left)) +
                     static_cast<double>(n_right) *
                         gini(right_counts, static_cast<double>(n_right))) /
                    total;
                if (impurity < best_impurity) {
                    best_impurity = impurity;
                    best_feature = f;
                    best_threshold = 0.5 * (v + v_next);
                    found = true;
                }
            }
        }
        if (!found) return make_leaf(indices);

        std::vector<std::size_t> left_idx, right_idx;
        for (const std::size_t i : indices) {
            (x_->row(i)[best_feature] <= best_threshold ? left_idx : right_idx).push_back(i);
        }
        if (left_idx.empty() || right_idx.empty()) return make_leaf(indices);

        const std::size_t self = nodes_.size();
        nodes_.emplace_back();
        nodes_[self].is_leaf = false;
        nodes_[self].feature = best_feature;
        nodes_[self].threshold = best_threshold;
        const std::size_t left = build(left_idx, depth + 1);
        const std::size_t right = build(right_idx, depth + 1);
        nodes_[self].left = left;
        nodes_[self].right = right;
        return self;
    }

    Hyperparams hp_;
    const Matrix* x_ = nullptr;
    std::span<const int> y_;
    std::size_t n_classes_ = 0;
    std::vector<Node> nodes_;
    std::vector<double> leaf_probs_;
};

// ---------------------------------------------------------------------------
// Gaussian naive Bayes with per-feature variance floor and Laplace priors.

class GaussianNbClassifier final : public BaseClassifier {
public:
    explicit GaussianNbClassifier(const Hyperparams& hp) : hp_(hp) {}

    void fit(const Matrix& x, std::span<const int> y, std::size_t n_classes, Rng&) override {
        n_classes_ = n_classes;
        dim_ = x.cols;
        means_.assign(n_classes * dim_, 0.0);
        inv_two_var_.assign(n_classes * dim_, 0.0);
        log_norm_.assign(n_classes, 0.0);
        log_prior_.assign(n_classes, 0.0);
        std::vector<double> counts(n_classes, 0.0);
        for (std::size_t i = 0; i < x.rows; ++i) {
            const auto c = static_cast<std::size_t>(y[i]);
            counts[c] += 1.0;
            const auto row = x.row(i);
            for (std::size_t f = 0; f < dim_; ++f) means_[c * dim_ + f] += row[f];
        }
        for (std::size_t c = 0; c < n_classes; ++c) {
            if (counts[c] > 0.0) {
                for (std::size_t f = 0; f < dim_; ++f) means_[c * dim_ + f] /= counts[c];
            }
        }
        std::vector<double> vars(n_classes * dim_, 0.0);
        for (std::size_t i = 0; i < x.rows; ++i) {
            const auto c = static_cast<std::size_t>(y[i]);
            const auto row = x.row(i);
            for (std::size_t f = 0; f < dim_; ++f) {
                const double dev = row[f] - means_[c * dim_ + f];
                vars[c * dim_ + f] += dev * dev;
            }
        }
        constexpr double kLog2Pi = 1.8378770664093453;
        for (std::size_t c = 0; c < n_classes; ++c) {
            double log_norm = 0.0;
            for (std::size_t f = 0; f < dim_; ++f) {
                double var = counts[c] > 0.0 ? vars[c * dim_ + f] / counts[c] : 0.0;
                var = std::max(var, hp_.nb_variance_floor);
                inv_two_var_[c * dim_ + f] = 0.5 / var;
                log_norm += -0.5 * (kLog2Pi + std::log(var));
            }
            log_norm_[c] = log_norm;
            log_prior_[c] = std::log((counts[c] + 1.0) /
                                     (static_cast<double>(x.rows) +
                                      static_cast<double>(n_classes)));
        }
        mark_fitted();
    }

    void predict_proba(std::span<const double> x, std::span<double> out) const override {
        require_fitted();
        for (std::size_t c = 0; c < n_classes_; ++c) {
            double quad = 0.0;
            const double* mu = means_.data() + c * dim_;
            const double* itv = inv_two_var_.data() + c * dim_;
            for (std::size_t f = 0; f < dim_; ++f) {
                const double dev = x[f] - mu[f];
                quad += dev * dev * itv[f];
            }
            out[c] = log_prior_[c] + log_norm_[c] - quad;
        }
        const double top = *std::max_element(out.begin(), out.end());
        double sum = 0.0;
        for (double& v : out) {
            v = std::exp(v - top);
            sum += v;
        }
        for (double& v : out) v /= sum;
        smooth_posteriors(out, hp_.posterior_floor);
    }

    Family family() const override { return Family::gaussian_nb; }

private:
    Hyperparams hp_;
    std::size_t n_classes_ = 0;
    std::size_t dim_ = 0;
    std::vector<double> means_;
    std::vector<double> inv_two_var_;
    std::vector<double> log_norm_;
    std::vector<double> log_prior_;
};

// ---------------------------------------------------------------------------
// Multinomial logistic regression trained by per-instance SGD with L2 decay.

class LogisticClassifier final : public BaseClassifier {
public:
    explicit LogisticClassifier(const Hyperparams& hp) : hp_(hp) {}

    void fit(const Matrix& x, std::span<const int> y, std::size_t n_classes, Rng& rng) override {
        n_classes_ = n_classes;
        dim_ = x.cols;
        w_.assign(n_classes * dim_, 0.0);
        b_.assign(n_classes, 0.0);
        std::vector<std::size_t> order(x.rows);
        std::iota(order.begin(), order.end(), 0);
        std::vector<double> p(n_classes);
        const double lr = hp_.linear_learning_rate;
        const double decay = 1.0 - lr * hp_.linear_l2;
        for (std::size_t epoch = 0; epoch < hp_.linear_epochs; ++epoch) {
            rng.shuffle(order);
            for (const std::size_t i : order) {
                const auto row = x.row(i);
                scores(row, p);
                softmax_inplace(p);
                for (std::size_t c = 0; c < n_classes_; ++c) {
                    const double g = p[c] - (static_cast<std::size_t>(y[i]) == c ? 1.0 : 0.0);
                    std::span<double> wc{w_.data() + c * dim_, dim_};
                    if (decay != 1.0) {
                        for (double& v : wc) v *= decay;
                    }
                    kernels::axpy(-lr * g, row, wc);
                    b_[c] -= lr * g;
                }
            }
        }
        mark_fitted();
    }

    void predict_proba(std::span<const double> x, std::span<double> out) const override {
        require_fitted();
        std::vector<double> p(n_classes_);
        scores(x, p);
        softmax_inplace(p);
        std::copy(p.begin(), p.end(), out.begin());
        smooth_posteriors(out, hp_.posterior_floor);
    }

    Family family() const override { return Family::logistic_regression; }

private:
    void scores(std::span<const double> x, std::vector<double>& out) const {
        for (std::size_t c = 0; c < n_classes_; ++c) {
            out[c] = kernels::dot({w_.data() + c * dim_, dim_}, x) + b_[c];
        }
    }

    static void softmax_inplace(std::vector<double>& v) {
        const double top = *std::max_element(v.begin(), v.end());
        double sum = 0.0;
        for (double& s : v) {
            s = std::exp(s - top);
            sum += s;
        }
        for (double& s : v) s /= sum;
    }

    Hyperparams hp_;
    std::size_t n_classes_ = 0;
    std::size_t dim_ = 0;
    std::vector<double> w_;
    std::vector<double> b_;
};

// ---------------------------------------------------------------------------
// Averaged multiclass perceptron (lazy averaging); posteriors are the softmax
// of the averaged linear scores.

class PerceptronClassifier final : public BaseClassifier {
public:
    explicit PerceptronClassifier(const Hyperparams& hp) : hp_(hp) {}

    void fit(const Matrix& x, std::span<const int> y, std::size_t n_classes, Rng& rng) override {
        n_classes_ = n_classes;
        dim_ = x.cols;
        std::vector<double> w(n_classes * dim_, 0.0), b(n_classes, 0.0);
        std::vector<double> u(n_classes * dim_, 0.0), ub(n_classes, 0.0);
        std::vector<std::size_t> order(x.rows);
        std::iota(order.begin(), order.end(), 0);
        const double lr = hp_.linear_learning_rate;
        double t = 1.0;
        for (std::size_t epoch = 0; epoch < hp_.linear_epochs; ++epoch) {
            rng.shuffle(order);
            for (const std::size_t i : order) {
                const auto row = x.row(i);
                std::size_t best = 0;
                double best_score = -std::numeric_limits<double>::infinity();
                for (std::size_t c = 0; c < n_classes_; ++c) {
                    const double s = kernels::dot({w.data() + c * dim_, dim_}, row) + b[c];
                    if (s > best_score) {
                        best_score = s;
                        best = c;
                    }
                }
                const auto truth = static_cast<std::size_t>(y[i]);
                if (best != truth) {
                    kernels::axpy(lr, row, {w.data() + truth * dim_, dim_});
                    kernels::axpy(-lr, row, {w.data() + best * dim_, dim_});
                    b[truth] += lr;
                    b[best] -= lr;
                    kernels::axpy(lr * t, row, {u.data() + truth * dim_, dim_});
                    kernels::axpy(-lr * t, row, {u.data() + best * dim_, dim_});
                    ub[truth] += lr * t;
                    ub[best] -= lr * t;
                }
                t += 1.0;
            }
        }
        // Averaged weights: w_avg = w - u / t.
        w_avg_.resize(w.size());
        b_avg_.resize(b.size());
        for (std::size_t i = 0; i < w.size(); ++i) w_avg_[i] = w[i] - u[i] / t;
        for (std::size_t c = 0; c < b.size(); ++c) b_avg_[c] = b[c] - ub[c] / t;
        mark_fitted();
    }

    void predict_proba(std::span<const double> x, std::span<double> out) const override {
        require_fitted();
        double top = -std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < n_classes_; ++c) {
            out[c] = kernels::dot({w_avg_.data() + c * dim_, dim_}, x) + b_avg_[c];
            top = std::max(top, out[c]);
        }
        double sum = 0.0;
        for (double& v : out) {
            v = std::exp(v - top);
            sum += v;
        }
        for (double& v : out) v /= sum;
        smooth_posteriors(out, hp_.posterior_floor);
    }

    Family family() const override { return Family::perceptron; }

private:
    Hyperparams hp_;
    std::size_t n_classes_ = 0;
    std::size_t dim_ = 0;
    std::vector<double> w_avg_;
    std::vector<double> b_avg_;
};

} // namespace

std::unique_ptr<BaseClassifier> make_classifier(Family family, const Hyperparams& hp) {
    switch (family) {
        case Family::knn: return std::make_unique<KnnClassifier>(hp);
        case Family::decision_tree: return std::make_unique<TreeClassifier>(hp);
        case Family::gaussian_nb: return std::make_unique<GaussianNbClassifier>(hp);
        case Family::logistic_regression: return std::make_unique<LogisticClassifier>(hp);
        case Family::perceptron: return std::make_unique<PerceptronClassifier>(hp);
    }
    throw ConfigError("make_classifier: unknown family");
}

} // namespace gmfuse::ensemble

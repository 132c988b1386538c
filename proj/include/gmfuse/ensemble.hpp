#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "gmfuse/classifiers.hpp"
#include "gmfuse/dataset.hpp"
#include "gmfuse/fusion.hpp"

namespace gmfuse::ensemble {

struct EnsembleConfig {
    std::size_t size = 7;
    // Family cycle used to fill the ensemble; members are emitted grouped in
    // this order (size 7 with the default cycle gives knn, knn, tree, tree,
    // nb, logreg, perceptron).
    std::vector<Family> composition = default_composition();
    Hyperparams hyper;
    std::size_t bootstrap_max_retries = 32;

    static std::vector<Family> default_composition() {
        return {Family::knn, Family::decision_tree, Family::gaussian_nb,
                Family::logistic_regression, Family::perceptron};
    }
};

// Family of each member for an ensemble of `size`: counts follow a
// round-robin over the composition cycle, emitted grouped by family.
std::vector<Family> member_families(std::size_t size, std::span<const Family> composition);

// Bootstrap sample of `count` indices into [0, count) that contains every
// class in `required_classes`; resamples up to max_retries before giving up.
std::vector<std::size_t> bootstrap_sample(std::span<const int> labels,
                                          std::span<const int> required_classes, Rng& rng,
                                          std::size_t max_retries);

class Ensemble {
public:
    static Ensemble train(const data::Dataset& train, std::span<const std::size_t> rows,
                          const EnsembleConfig& config, fusion::Combiner combiner,
                          fusion::TiePolicy tie_policy, std::uint64_t seed);

    std::size_t size() const { return members_.size(); }
    const std::vector<std::string>& class_labels() const { return class_labels_; }
    const fusion::Combiner& combiner() const { return combiner_; }
    const BaseClassifier& member(std::size_t i) const { return *members_[i]; }
    const Preprocessor& preprocessor() const { return prep_; }

    // Posterior rows of every member for one instance of a dataset with the
    // training schema.
    fusion::ScoreMatrix member_scores(const data::Dataset& d, std::size_t row) const;

    // Fuses member scores with the configured combiner.
    fusion::Prediction predict(const data::Dataset& d, std::size_t row, Rng& tie_rng) const;

private:
    Preprocessor prep_;
    std::vector<std::unique_ptr<BaseClassifier>> members_;
    std::vector<std::string> class_labels_;
    fusion::Combiner combiner_;
    fusion::TiePolicy tie_policy_ = fusion::TiePolicy::lowest_index;
    std::uint64_t seed_ = 0;
};

} // namespace gmfuse::ensemble

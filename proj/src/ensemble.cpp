#include "gmfuse/ensemble.hpp"

#include <algorithm>
#include <set>

#include "gmfuse/error.hpp"

namespace gmfuse::ensemble {

std::vector<Family> member_families(std::size_t size, std::span<const Family> composition) {
    if (size < 2) throw ConfigError("ensemble size must be at least 2");
    if (composition.empty()) throw ConfigError("ensemble composition must not be empty");
    std::vector<std::size_t> counts(composition.size(), 0);
    for (std::size_t i = 0; i < size; ++i) ++counts[i % composition.size()];
    std::vector<Family> families;
    families.reserve(size);
    for (std::size_t f = 0; f < composition.size(); ++f) {
        families.insert(families.end(), counts[f], composition[f]);
    }
    return families;
}

std::vector<std::size_t> bootstrap_sample(std::span<const int> labels,
                                          std::span<const int> required_classes, Rng& rng,
                                          std::size_t max_retries) {
    const std::size_t n = labels.size();
    if (n == 0) throw DataError("bootstrap_sample: empty training split");
    std::vector<std::size_t> sample(n);
    for (std::size_t attempt = 0; attempt <= max_retries; ++attempt) {
        std::set<int> seen;
        for (std::size_t i = 0; i < n; ++i) {
            sample[i] = rng.next_index(n);
            seen.insert(labels[sample[i]]);
        }
        const bool complete =
            std::all_of(required_classes.begin(), required_classes.end(),
                        [&seen](int c) { return seen.count(c) > 0; });
        if (complete) return sample;
    }
    throw DataError("bootstrap_sample: a class stayed absent after " +
                    std::to_string(max_retries) + " retries");
}

Ensemble Ensemble::train(const data::Dataset& train, std::span<const std::size_t> rows,
                         const EnsembleConfig& config, fusion::Combiner combiner,
                         fusion::TiePolicy tie_policy, std::uint64_t seed) {
    if (rows.empty()) throw DataError("train: empty training split");
    Ensemble e;
    e.class_labels_ = train.class_labels;
    e.combiner_ = std::move(combiner);
    e.tie_policy_ = tie_policy;
    e.seed_ = seed;

    e.prep_.fit(train, rows);
    const Matrix x = e.prep_.transform_rows(train, rows);
    std::vector<int> y(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) y[i] = train.labels[rows[i]];

    std::vector<int> present(y.begin(), y.end());
    std::sort(present.begin(), present.end());
    present.erase(std::unique(present.begin(), present.end()), present.end());
    if (present.size() < 2) throw DataError("train: training split has fewer than 2 classes");

    const std::vector<Family> families = member_families(config.size, config.composition);
    const std::size_t n_classes = train.class_labels.size();
    for (std::size_t m = 0; m < families.size(); ++m) {
        Rng member_rng(derive_seed(seed, "member", {m}));
        const std::vector<std::size_t> sample =
            bootstrap_sample(y, present, member_rng, config.bootstrap_max_retries);
        Matrix xm(sample.size(), x.cols);
        std::vector<int> ym(sample.size());
        for (std::size_t i = 0; i < sample.size(); ++i) {
            const auto src = x.row(sample[i]);
            std::copy(src.begin(), src.end(), xm.row(i).begin());
            ym[i] = y[sample[i]];
        }
        auto clf = make_classifier(families[m], config.hyper);
        clf->fit(xm, ym, n_classes, member_rng);
        e.members_.push_back(std::move(clf));
    }
    return e;
}

fusion::ScoreMatrix Ensemble::member_scores(const data::Dataset& d, std::size_t row) const {
    const std::size_t l = class_labels_.size();
    std::vector<double> instance(prep_.out_dim());
    prep_.transform(d, row, instance);
    std::vector<double> data(members_.size() * l);
    for (std::size_t m = 0; m < members_.size(); ++m) {
        members_[m]->predict_proba(instance, {data.data() + m * l, l});
    }
    return {members_.size(), l, std::move(data)};
}

fusion::Prediction Ensemble::predict(const data::Dataset& d, std::size_t row,
                                     Rng& tie_rng) const {
    return fusion::classify(member_scores(d, row), combiner_, tie_policy_, tie_rng);
}

} // namespace gmfuse::ensemble

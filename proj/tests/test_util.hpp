#pragma once

#include <string>
#include <vector>

#include "gmfuse/dataset.hpp"
#include "gmfuse/rng.hpp"

namespace gmfuse::testutil {

// Gaussian blobs, one per class, centers spread along each axis by
// `separation`. All-numeric schema with labels "c0", "c1", ...
inline data::Dataset make_blobs(std::size_t per_class, std::size_t classes, std::size_t dims,
                                std::uint64_t seed, double separation = 3.0) {
    data::Dataset d;
    d.name = "blobs";
    for (std::size_t f = 0; f < dims; ++f) {
        d.features.push_back({"f" + std::to_string(f), data::FeatureKind::numeric, {}});
    }
    for (std::size_t c = 0; c < classes; ++c) d.class_labels.push_back("c" + std::to_string(c));
    Rng rng(seed);
    for (std::size_t c = 0; c < classes; ++c) {
        for (std::size_t i = 0; i < per_class; ++i) {
            for (std::size_t f = 0; f < dims; ++f) {
                const double center = (f % classes == c) ? separation : 0.0;
                // Sum of three uniforms approximates a normal well enough.
                const double noise = rng.next_double(-1.0, 1.0) + rng.next_double(-1.0, 1.0) +
                                     rng.next_double(-1.0, 1.0);
                d.cells.push_back(center + noise);
            }
            d.labels.push_back(static_cast<int>(c));
        }
    }
    return d;
}

} // namespace gmfuse::testutil

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "gmfuse/dataset.hpp"
#include "gmfuse/fusion.hpp"

namespace gmfuse::data {

struct LoadResult {
    Dataset dataset;
    std::vector<std::string> warnings;
};

// Reads a delimiter-separated file with a header row. Columns whose
// non-missing cells all parse as numbers become numeric features, the rest
// categorical. `?` and empty cells are missing. Columns that are entirely
// missing are dropped with a warning.
LoadResult load_dataset(const std::string& path, const std::string& label_column);
LoadResult parse_dataset(std::istream& in, const std::string& source_name,
                         const std::string& label_column);

struct ScoreFile {
    fusion::ScoreMatrix scores;
    std::vector<std::string> class_names;  // empty when the file has no header
};

// Parses a score matrix: one comma-separated row of class scores per member,
// optional `#`-prefixed header naming the classes. Rows must sum to 1 within
// 1e-6 unless `normalize` renormalizes them.
ScoreFile load_score_file(const std::string& path, bool normalize);
ScoreFile parse_score_file(std::istream& in, const std::string& source_name, bool normalize);

} // namespace gmfuse::data

#include "gmfuse/dataio.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <limits>
#include <sstream>

#include "gmfuse/error.hpp"

namespace gmfuse::data {

double Dataset::majority_class_fraction() const {
    if (labels.empty()) return 0.0;
    std::vector<std::size_t> counts(class_labels.size(), 0);
    for (const int y : labels) ++counts[static_cast<std::size_t>(y)];
    const std::size_t top = *std::max_element(counts.begin(), counts.end());
    return static_cast<double>(top) / static_cast<double>(labels.size());
}

bool Dataset::schema_matches(const Dataset& other) const {
    if (features.size() != other.features.size()) return false;
    for (std::size_t f = 0; f < features.size(); ++f) {
        if (features[f].kind != other.features[f].kind) return false;
        if (features[f].name != other.features[f].name) return false;
    }
    return true;
}

namespace {

std::string trim(std::string s) {
    const auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
    while (!s.empty() && is_space(s.back())) s.pop_back();
    std::size_t i = 0;
    while (i < s.size() && is_space(s[i])) ++i;
    return s.substr(i);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(trim(field));
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

bool is_missing_marker(const std::string& s) { return s.empty() || s == "?"; }

bool parse_number(const std::string& s, double& out) {
    const char* begin = s.data();
    const char* end = begin + s.size();
    const auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc() && ptr == end;
}

} // namespace

LoadResult parse_dataset(std::istream& in, const std::string& source_name,
                         const std::string& label_column) {
    std::string line;
    if (!std::getline(in, line)) throw DataError(source_name + ": empty file");
    const std::vector<std::string> header = split_csv_line(line);
    if (header.empty()) throw DataError(source_name + ": empty header row");

    std::size_t label_idx = header.size();
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == label_column) label_idx = i;
    }
    if (label_idx == header.size()) {
        std::string cols;
        for (std::size_t i = 0; i < header.size(); ++i) cols += (i ? ", " : "") + header[i];
        throw DataError(source_name + ": label column '" + label_column +
                        "' not found; available columns: " + cols);
    }

    // First pass: collect raw cells per row.
    std::vector<std::vector<std::string>> raw_rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        std::vector<std::string> fields = split_csv_line(line);
        if (fields.size() != header.size()) {
            throw DataError(source_name + ": row " + std::to_string(line_no) + " has " +
                            std::to_string(fields.size()) + " fields, expected " +
                            std::to_string(header.size()));
        }
        if (is_missing_marker(fields[label_idx])) {
            throw DataError(source_name + ": row " + std::to_string(line_no) +
                            " has a missing class label");
        }
        raw_rows.push_back(std::move(fields));
    }
    if (raw_rows.empty()) throw DataError(source_name + ": no data rows");

    LoadResult result;
    Dataset& d = result.dataset;
    d.name = source_name;

    // Column typing: numeric unless some non-missing cell fails to parse.
    // Entirely-missing columns are dropped.
    std::vector<std::size_t> kept_columns;
    std::vector<FeatureKind> kinds;
    for (std::size_t c = 0; c < header.size(); ++c) {
        if (c == label_idx) continue;
        bool all_missing = true;
        bool numeric = true;
        for (const auto& row : raw_rows) {
            if (is_missing_marker(row[c])) continue;
            all_missing = false;
            double v;
            if (!parse_number(row[c], v)) numeric = false;
        }
        if (all_missing) {
            result.warnings.push_back("column '" + header[c] +
                                      "' has no observed values and was dropped");
            continue;
        }
        kept_columns.push_back(c);
        kinds.push_back(numeric ? FeatureKind::numeric : FeatureKind::categorical);
    }
    if (kept_columns.empty()) throw DataError(source_name + ": no usable feature columns");

    for (std::size_t f = 0; f < kept_columns.size(); ++f) {
        FeatureInfo info;
        info.name = header[kept_columns[f]];
        info.kind = kinds[f];
        d.features.push_back(std::move(info));
    }

    // Second pass: encode cells and labels.
    d.cells.reserve(raw_rows.size() * kept_columns.size());
    for (const auto& row : raw_rows) {
        for (std::size_t f = 0; f < kept_columns.size(); ++f) {
            const std::string& cell = row[kept_columns[f]];
            if (is_missing_marker(cell)) {
                d.cells.push_back(std::numeric_limits<double>::quiet_NaN());
                continue;
            }
            if (d.features[f].kind == FeatureKind::numeric) {
                double v = 0.0;
                parse_number(cell, v);
                d.cells.push_back(v);
            } else {
                auto& cats = d.features[f].categories;
                auto it = std::find(cats.begin(), cats.end(), cell);
                if (it == cats.end()) {
                    cats.push_back(cell);
                    it = std::prev(cats.end());
                }
                d.cells.push_back(static_cast<double>(it - cats.begin()));
            }
        }
        const std::string& label = row[label_idx];
        auto it = std::find(d.class_labels.begin(), d.class_labels.end(), label);
        if (it == d.class_labels.end()) {
            d.class_labels.push_back(label);
            it = std::prev(d.class_labels.end());
        }
        d.labels.push_back(static_cast<int>(it - d.class_labels.begin()));
    }

    if (d.class_labels.size() < 2) {
        throw DataError(source_name + ": only one distinct class label ('" +
                        d.class_labels.front() + "'); need at least 2");
    }
    return result;
}

LoadResult load_dataset(const std::string& path, const std::string& label_column) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open dataset file: " + path);
    // Dataset name = file stem.
    std::string name = path;
    if (const auto slash = name.find_last_of('/'); slash != std::string::npos) {
        name = name.substr(slash + 1);
    }
    if (const auto dot = name.find_last_of('.'); dot != std::string::npos) {
        name = name.substr(0, dot);
    }
    return parse_dataset(in, name, label_column);
}

ScoreFile parse_score_file(std::istream& in, const std::string& source_name, bool normalize) {
    std::vector<std::string> class_names;
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string trimmed = trim(line);
        if (trimmed.empty()) continue;
        if (trimmed[0] == '#') {
            if (rows.empty() && class_names.empty()) {
                class_names = split_csv_line(trim(trimmed.substr(1)));
            }
            continue;
        }
        std::vector<double> row;
        for (const std::string& field : split_csv_line(trimmed)) {
            double v;
            if (!parse_number(field, v)) {
                throw DataError(source_name + ": line " + std::to_string(line_no) +
                                ": '" + field + "' is not a number");
            }
            row.push_back(v);
        }
        if (!rows.empty() && row.size() != rows.front().size()) {
            throw DataError(source_name + ": line " + std::to_string(line_no) + " has " +
                            std::to_string(row.size()) + " scores, expected " +
                            std::to_string(rows.front().size()));
        }
        if (normalize) {
            double sum = 0.0;
            for (const double v : row) {
                if (v < 0.0) {
                    throw DataError(source_name + ": line " + std::to_string(line_no) +
                                    ": negative score cannot be normalized");
                }
                sum += v;
            }
            if (sum <= 0.0) {
                throw DataError(source_name + ": line " + std::to_string(line_no) +
                                ": zero row cannot be normalized");
            }
            for (double& v : row) v /= sum;
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw DataError(source_name + ": no score rows");
    const std::size_t classes = rows.front().size();
    if (!class_names.empty() && class_names.size() != classes) {
        throw DataError(source_name + ": header names " + std::to_string(class_names.size()) +
                        " classes but rows have " + std::to_string(classes));
    }
    std::vector<double> data;
    data.reserve(rows.size() * classes);
    for (const auto& row : rows) data.insert(data.end(), row.begin(), row.end());
    return ScoreFile{fusion::ScoreMatrix(rows.size(), classes, std::move(data)),
                     std::move(class_names)};
}

ScoreFile load_score_file(const std::string& path, bool normalize) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open score file: " + path);
    return parse_score_file(in, path, normalize);
}

} // namespace gmfuse::data

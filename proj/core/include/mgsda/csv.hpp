#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "mgsda/dataset.hpp"
#include "mgsda/linalg.hpp"

namespace mgsda {

// Shortest decimal representation that parses back to the same double
// (std::to_chars). All numeric output funnels through this so that repeated
// writes of the same values are byte-identical.
std::string format_double(double x);

// Strict full-string parse via std::from_chars; throws on anything else.
double parse_double(std::string_view text);

// Labeled table: a header row, one designated label column (by name), all
// other columns numeric. Label values are kept as strings, deduplicated in
// sorted order and mapped to 1..G; label_names[g-1] is the original spelling.
struct LabeledTable {
    Matrix X;
    std::vector<int> labels;
    int n_groups = 0;
    std::vector<std::string> feature_names;
    std::vector<std::string> label_names;

    LabeledDataset dataset() const;
};

LabeledTable read_labeled_csv(const std::string& path,
                              const std::string& label_col);

struct FeatureTable {
    Matrix X;
    std::vector<std::string> feature_names;
};

// All columns numeric; header row required.
FeatureTable read_feature_csv(const std::string& path);

// Numeric grid with an optional header row (detected by a non-numeric first
// cell); used for covariance files.
Matrix read_matrix_csv(const std::string& path);

void write_labels_csv(const std::string& path,
                      const std::vector<std::string>& labels,
                      const std::string& column_name = "label");

// Low-level helpers shared by the CLI writers.
std::vector<std::string> split_csv_line(const std::string& line);
std::string join_csv(const std::vector<std::string>& fields);

} // namespace mgsda

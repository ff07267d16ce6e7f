#include "mgsda/csv.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <stdexcept>

namespace mgsda {

std::string format_double(double x) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

double parse_double(std::string_view text) {
    // from_chars rejects leading '+' and surrounding spaces; trim and allow
    // an explicit plus so hand-written CSVs are accepted.
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t'))
        text.remove_prefix(1);
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t'))
        text.remove_suffix(1);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double value = 0.0;
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    auto res = std::from_chars(first, last, value);
    if (res.ec != std::errc() || res.ptr != last || text.empty())
        throw std::invalid_argument("not a number: '" + std::string(text) + "'");
    return value;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur += ch;
        }
    }
    fields.push_back(cur);
    return fields;
}

std::string join_csv(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ',';
        out += fields[i];
    }
    return out;
}

namespace {

std::vector<std::vector<std::string>> read_rows(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        rows.push_back(split_csv_line(line));
    }
    if (rows.empty()) throw std::runtime_error(path + ": empty file");
    const std::size_t width = rows.front().size();
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (rows[i].size() != width)
            throw std::runtime_error(path + ": row " + std::to_string(i + 1) +
                                     " has " + std::to_string(rows[i].size()) +
                                     " fields, expected " + std::to_string(width));
    return rows;
}

bool is_number(const std::string& s) {
    try {
        parse_double(s);
        return true;
    } catch (const std::invalid_argument&) {
        return false;
    }
}

std::string trimmed(const std::string& s) {
    auto b = s.find_first_not_of(" \t");
    auto e = s.find_last_not_of(" \t");
    if (b == std::string::npos) return "";
    return s.substr(b, e - b + 1);
}

} // namespace

LabeledDataset LabeledTable::dataset() const {
    return make_dataset(X, labels, n_groups);
}

LabeledTable read_labeled_csv(const std::string& path,
                              const std::string& label_col) {
    const auto rows = read_rows(path);
    const auto& header = rows.front();

    int label_idx = -1;
    for (std::size_t j = 0; j < header.size(); ++j)
        if (trimmed(header[j]) == label_col) {
            label_idx = static_cast<int>(j);
            break;
        }
    if (label_idx < 0)
        throw std::runtime_error(path + ": no column named '" + label_col + "'");

    const int n = static_cast<int>(rows.size()) - 1;
    const int p = static_cast<int>(header.size()) - 1;
    if (n < 1) throw std::runtime_error(path + ": no data rows");
    if (p < 1) throw std::runtime_error(path + ": no feature columns");

    LabeledTable t;
    t.X = Matrix(n, p);
    t.feature_names.reserve(p);
    for (std::size_t j = 0; j < header.size(); ++j)
        if (static_cast<int>(j) != label_idx)
            t.feature_names.push_back(trimmed(header[j]));

    std::vector<std::string> raw_labels(n);
    for (int i = 0; i < n; ++i) {
        const auto& row = rows[i + 1];
        int col = 0;
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (static_cast<int>(j) == label_idx) {
                raw_labels[i] = trimmed(row[j]);
            } else {
                t.X(i, col++) = parse_double(row[j]);
            }
        }
    }

    std::map<std::string, int> mapping;
    for (const auto& lab : raw_labels) mapping.emplace(lab, 0);
    // Sort numerically when every label parses as a number, else
    // lexicographically; either way the mapping to 1..G is deterministic.
    std::vector<std::string> keys;
    for (const auto& [k, v] : mapping) keys.push_back(k);
    const bool numeric =
        std::all_of(keys.begin(), keys.end(), [](const std::string& s) {
            return is_number(s);
        });
    if (numeric)
        std::sort(keys.begin(), keys.end(),
                  [](const std::string& a, const std::string& b) {
                      return parse_double(a) < parse_double(b);
                  });
    for (std::size_t g = 0; g < keys.size(); ++g) mapping[keys[g]] = int(g) + 1;

    t.label_names = keys;
    t.n_groups = static_cast<int>(keys.size());
    t.labels.resize(n);
    for (int i = 0; i < n; ++i) t.labels[i] = mapping[raw_labels[i]];
    return t;
}

FeatureTable read_feature_csv(const std::string& path) {
    const auto rows = read_rows(path);
    const int n = static_cast<int>(rows.size()) - 1;
    const int p = static_cast<int>(rows.front().size());
    if (n < 1) throw std::runtime_error(path + ": no data rows");

    FeatureTable t;
    t.feature_names.reserve(p);
    for (const auto& name : rows.front()) t.feature_names.push_back(trimmed(name));
    t.X = Matrix(n, p);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < p; ++j) t.X(i, j) = parse_double(rows[i + 1][j]);
    return t;
}

Matrix read_matrix_csv(const std::string& path) {
    auto rows = read_rows(path);
    std::size_t first = 0;
    if (!rows.empty() && !is_number(rows.front().front())) first = 1;
    const int n = static_cast<int>(rows.size() - first);
    if (n < 1) throw std::runtime_error(path + ": no numeric rows");
    const int p = static_cast<int>(rows.front().size());
    Matrix M(n, p);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < p; ++j) M(i, j) = parse_double(rows[first + i][j]);
    return M;
}

void write_labels_csv(const std::string& path,
                      const std::vector<std::string>& labels,
                      const std::string& column_name) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << column_name << '\n';
    for (const auto& lab : labels) out << lab << '\n';
    if (!out) throw std::runtime_error("write failed: " + path);
}

} // namespace mgsda

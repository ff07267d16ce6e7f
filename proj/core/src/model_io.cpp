#include "mgsda/model_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "mgsda/csv.hpp"

namespace mgsda {

namespace {

void append_row(std::string& out, const char* key, const double* values,
                Eigen::Index count) {
    out += key;
    for (Eigen::Index i = 0; i < count; ++i) {
        out += ' ';
        out += format_double(values[i]);
    }
    out += '\n';
}

const char* standardize_name(Standardize mode) {
    switch (mode) {
    case Standardize::None: return "none";
    case Standardize::Feature: return "feature";
    case Standardize::Row: return "row";
    }
    return "?";
}

Standardize standardize_from(const std::string& name) {
    if (name == "none") return Standardize::None;
    if (name == "feature") return Standardize::Feature;
    if (name == "row") return Standardize::Row;
    throw std::runtime_error("model: unknown standardize mode '" + name + "'");
}

// Sequential line reader with keyword checking.
struct Cursor {
    std::istringstream in;
    std::string line;
    int lineno = 0;

    explicit Cursor(const std::string& text) : in(text) {}

    std::string next(const std::string& key) {
        if (!std::getline(in, line))
            throw std::runtime_error("model: unexpected end of file, expected '" +
                                     key + "'");
        ++lineno;
        if (line.rfind(key + " ", 0) != 0 && line != key)
            throw std::runtime_error("model: line " + std::to_string(lineno) +
                                     ": expected '" + key + "', got '" + line + "'");
        return line.size() > key.size() ? line.substr(key.size() + 1)
                                        : std::string();
    }

    std::vector<std::string> fields(const std::string& key,
                                    std::size_t expected) {
        std::istringstream ls(next(key));
        std::vector<std::string> out;
        std::string tok;
        while (ls >> tok) out.push_back(tok);
        if (out.size() != expected)
            throw std::runtime_error("model: line " + std::to_string(lineno) +
                                     ": expected " + std::to_string(expected) +
                                     " values after '" + key + "', got " +
                                     std::to_string(out.size()));
        return out;
    }

    Vector numbers(const std::string& key, Eigen::Index expected) {
        const auto f = fields(key, static_cast<std::size_t>(expected));
        Vector v(expected);
        for (Eigen::Index i = 0; i < expected; ++i) v[i] = parse_double(f[i]);
        return v;
    }

    long integer(const std::string& key) {
        const auto f = fields(key, 1);
        return std::stol(f[0]);
    }
};

} // namespace

std::string to_text(const ModelFile& model) {
    const int G = model.groups;
    const int p = model.features;
    if (static_cast<int>(model.label_names.size()) != G ||
        model.priors.size() != G || model.means.rows() != G ||
        model.means.cols() != p || model.W.rows() != p || model.W.cols() != p)
        throw std::invalid_argument("model: inconsistent dimensions");
    if (model.entries.empty())
        throw std::invalid_argument("model: no entries");
    if (model.selected < 0 ||
        model.selected >= static_cast<int>(model.entries.size()))
        throw std::invalid_argument("model: selected entry out of range");

    std::string out;
    out += "mgsda-model 1\n";
    out += "groups " + std::to_string(G) + "\n";
    out += "features " + std::to_string(p) + "\n";
    out += std::string("standardize ") +
           standardize_name(model.standardization.mode) + "\n";
    if (model.standardization.mode == Standardize::Feature) {
        if (model.standardization.center.size() != p ||
            model.standardization.scale.size() != p)
            throw std::invalid_argument("model: bad standardization vectors");
        append_row(out, "center", model.standardization.center.data(), p);
        append_row(out, "scale", model.standardization.scale.data(), p);
    }
    for (const auto& name : model.label_names) out += "label " + name + "\n";
    append_row(out, "priors", model.priors.data(), G);
    for (int g = 0; g < G; ++g) {
        const Vector row = model.means.row(g);
        append_row(out, "mean", row.data(), p);
    }
    for (int i = 0; i < p; ++i) {
        const Vector row = model.W.row(i);
        append_row(out, "W", row.data(), p);
    }
    out += "entries " + std::to_string(model.entries.size()) + "\n";
    out += "selected " + std::to_string(model.selected) + "\n";
    for (const auto& e : model.entries) {
        if (e.V.rows() != p || e.V.cols() != G - 1)
            throw std::invalid_argument("model: entry V has wrong shape");
        out += "lambda " + format_double(e.lambda) + " converged " +
               (e.converged ? "1" : "0") + "\n";
        for (int i = 0; i < p; ++i) {
            const Vector row = e.V.row(i);
            append_row(out, "v", row.data(), G - 1);
        }
    }
    return out;
}

ModelFile model_from_text(const std::string& text) {
    Cursor c(text);
    const auto version = c.fields("mgsda-model", 1);
    if (version[0] != "1")
        throw std::runtime_error("model: unsupported version " + version[0]);

    ModelFile m;
    m.groups = static_cast<int>(c.integer("groups"));
    m.features = static_cast<int>(c.integer("features"));
    if (m.groups < 2 || m.features < 1)
        throw std::runtime_error("model: bad dimensions");
    const int G = m.groups, p = m.features;

    m.standardization.mode = standardize_from(c.fields("standardize", 1)[0]);
    if (m.standardization.mode == Standardize::Feature) {
        m.standardization.center = c.numbers("center", p);
        m.standardization.scale = c.numbers("scale", p);
    }
    m.label_names.resize(G);
    for (int g = 0; g < G; ++g) m.label_names[g] = c.next("label");
    m.priors = c.numbers("priors", G);
    m.means = Matrix(G, p);
    for (int g = 0; g < G; ++g) m.means.row(g) = c.numbers("mean", p);
    m.W = Matrix(p, p);
    for (int i = 0; i < p; ++i) m.W.row(i) = c.numbers("W", p);

    const long k = c.integer("entries");
    if (k < 1) throw std::runtime_error("model: needs at least one entry");
    m.selected = static_cast<int>(c.integer("selected"));
    if (m.selected < 0 || m.selected >= k)
        throw std::runtime_error("model: selected entry out of range");
    m.entries.resize(k);
    for (long e = 0; e < k; ++e) {
        auto f = c.fields("lambda", 3);
        if (f[1] != "converged")
            throw std::runtime_error("model: malformed entry header");
        m.entries[e].lambda = parse_double(f[0]);
        m.entries[e].converged = f[2] == "1";
        m.entries[e].V = Matrix(p, G - 1);
        for (int i = 0; i < p; ++i)
            m.entries[e].V.row(i) = c.numbers("v", G - 1);
    }
    return m;
}

void write_model(const std::string& path, const ModelFile& model) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << to_text(model);
    if (!out) throw std::runtime_error("write failed: " + path);
}

ModelFile read_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return model_from_text(ss.str());
}

DiscriminantModel to_classifier(const ModelFile& model, int entry_index) {
    const int idx = entry_index < 0 ? model.selected : entry_index;
    if (idx < 0 || idx >= static_cast<int>(model.entries.size()))
        throw std::invalid_argument("model: entry index out of range");
    return make_model(model.entries[idx].V, model.means, model.priors, model.W,
                      model.standardization, model.label_names);
}

} // namespace mgsda

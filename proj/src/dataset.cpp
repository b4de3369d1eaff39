#include "bellml/dataset.hpp"

#include <sstream>
#include <stdexcept>

#include "bellml/text_io.hpp"

namespace bellml {

const std::vector<double>& LabeledDataset::aux_column(const std::string& name) const {
    const auto it = aux.find(name);
    if (it == aux.end()) throw std::invalid_argument("dataset has no aux column '" + name + "'");
    return it->second;
}

void LabeledDataset::push_row(std::span<const double> feats, int label) {
    if (feats.size() != n_in) throw std::invalid_argument("push_row: feature width mismatch");
    features.insert(features.end(), feats.begin(), feats.end());
    labels.push_back(label);
}

LabeledDataset LabeledDataset::select(const std::vector<std::size_t>& indices) const {
    LabeledDataset out;
    out.n_in = n_in;
    out.n_classes = n_classes;
    out.features.reserve(indices.size() * n_in);
    out.labels.reserve(indices.size());
    for (const auto& [name, col] : aux) out.aux[name].reserve(indices.size());
    for (std::size_t i : indices) {
        const auto r = row(i);
        out.features.insert(out.features.end(), r.begin(), r.end());
        out.labels.push_back(labels[i]);
        for (const auto& [name, col] : aux) out.aux[name].push_back(col[i]);
    }
    return out;
}

void LabeledDataset::save(const std::string& path) const {
    std::ostringstream os;
    os << "bellml-dataset v1\n";
    os << "n_rows " << size() << "\n";
    os << "n_features " << n_in << "\n";
    os << "n_classes " << n_classes << "\n";
    os << "columns";
    for (std::size_t f = 0; f < n_in; ++f) os << " f" << f;
    os << " label";
    for (const auto& [name, col] : aux) os << ' ' << name;
    os << "\n";

    for (std::size_t i = 0; i < size(); ++i) {
        const auto r = row(i);
        for (std::size_t f = 0; f < n_in; ++f) {
            if (f) os << '\t';
            os << fmt_g12(r[f]);
        }
        os << (n_in ? "\t" : "") << labels[i];
        for (const auto& [name, col] : aux) os << '\t' << fmt_g12(col[i]);
        os << "\n";
    }
    atomic_write(path, os.str());
}

LabeledDataset LabeledDataset::load(const std::string& path) {
    std::istringstream is(read_file(path));
    std::string line;
    if (!std::getline(is, line) || line != "bellml-dataset v1")
        throw IoError("not a dataset file: " + path);

    auto next_kv = [&](const char* key) {
        if (!std::getline(is, line)) throw IoError("truncated dataset file: " + path);
        const auto toks = split_ws(line);
        if (toks.size() != 2 || toks[0] != key)
            throw IoError("expected '" + std::string(key) + "' in " + path);
        return toks[1];
    };
    const auto n_rows = static_cast<std::size_t>(parse_int(next_kv("n_rows"), path));
    LabeledDataset ds;
    ds.n_in = static_cast<std::size_t>(parse_int(next_kv("n_features"), path));
    ds.n_classes = static_cast<int>(parse_int(next_kv("n_classes"), path));

    if (!std::getline(is, line)) throw IoError("truncated dataset file: " + path);
    auto cols = split_ws(line);
    if (cols.empty() || cols[0] != "columns") throw IoError("expected 'columns' in " + path);
    cols.erase(cols.begin());
    const std::size_t label_pos = ds.n_in;
    if (cols.size() < label_pos + 1 || cols[label_pos] != "label")
        throw IoError("bad column layout in " + path);
    std::vector<std::string> aux_names(cols.begin() + label_pos + 1, cols.end());

    ds.features.reserve(n_rows * ds.n_in);
    ds.labels.reserve(n_rows);
    for (const auto& name : aux_names) ds.aux[name].reserve(n_rows);

    for (std::size_t i = 0; i < n_rows; ++i) {
        if (!std::getline(is, line)) throw IoError("truncated dataset file: " + path);
        const auto toks = split_ws(line);
        if (toks.size() != cols.size()) throw IoError("bad row width in " + path);
        for (std::size_t f = 0; f < ds.n_in; ++f)
            ds.features.push_back(parse_double(toks[f], path));
        ds.labels.push_back(static_cast<int>(parse_int(toks[label_pos], path)));
        for (std::size_t a = 0; a < aux_names.size(); ++a)
            ds.aux[aux_names[a]].push_back(parse_double(toks[label_pos + 1 + a], path));
    }
    return ds;
}

}  // namespace bellml

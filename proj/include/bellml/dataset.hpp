#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace bellml {

// Feature rows plus class labels plus named per-row metadata columns
// (generator parameters, oracle values). Features are what the predictors
// consume; density matrices are not stored here.
struct LabeledDataset {
    std::size_t n_in = 0;
    int n_classes = 2;
    std::vector<double> features;  // size() * n_in, row-major
    std::vector<int> labels;       // class indices
    std::map<std::string, std::vector<double>> aux;  // per-row metadata

    std::size_t size() const { return labels.size(); }

    std::span<const double> row(std::size_t i) const {
        return {features.data() + i * n_in, n_in};
    }

    bool has_aux(const std::string& name) const { return aux.count(name) != 0; }
    const std::vector<double>& aux_column(const std::string& name) const;

    void push_row(std::span<const double> feats, int label);

    // Keeps only the given rows, in the given order.
    LabeledDataset select(const std::vector<std::size_t>& indices) const;

    // Tab-separated text with a self-describing header; aux columns are
    // emitted in sorted name order so files are byte-stable.
    void save(const std::string& path) const;
    static LabeledDataset load(const std::string& path);
};

}  // namespace bellml

#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace bellml {

// Binned mismatch-rate grid R_mm(p, theta), averaged over phi within each
// cell. Row-major with p as the outer index.
struct HeatmapGrid {
    std::size_t res = 0;  // res x res cells; 0 means absent
    std::vector<double> p_center;
    std::vector<double> theta_center;
    std::vector<double> r_mm;
    std::vector<std::size_t> count;

    bool empty() const { return res == 0; }
    std::size_t cells() const { return res * res; }
};

struct GroupRate {
    std::string name;
    std::size_t n = 0;
    double match_rate = 0.0;
};

struct MetricsReport {
    std::string experiment;
    std::string model_name;
    int n_classes = 2;
    std::size_t n_samples = 0;
    double match_rate = 0.0;
    std::vector<std::size_t> confusion;  // n_classes^2, [true][predicted]
    std::vector<double> loss_bits;       // training loss per epoch
    HeatmapGrid heatmap;
    std::vector<GroupRate> groups;

    double mismatch_rate() const { return 1.0 - match_rate; }
    std::size_t confusion_at(int truth, int predicted) const {
        return confusion[static_cast<std::size_t>(truth) * n_classes + predicted];
    }

    // Writes <basepath>.metrics.txt and, when a heatmap is present,
    // <basepath>.heatmap.tsv (res^2 data rows plus a header).
    void save(const std::string& basepath) const;
    static MetricsReport load(const std::string& basepath);
};

}  // namespace bellml

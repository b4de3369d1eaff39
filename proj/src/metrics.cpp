#include "bellml/metrics.hpp"

#include <filesystem>
#include <sstream>

#include "bellml/text_io.hpp"

namespace bellml {

void MetricsReport::save(const std::string& basepath) const {
    std::ostringstream os;
    os << "bellml-metrics v1\n";
    os << "experiment " << experiment << "\n";
    os << "model " << model_name << "\n";
    os << "n_classes " << n_classes << "\n";
    os << "n_samples " << n_samples << "\n";
    os << "match_rate " << fmt_g12(match_rate) << "\n";
    os << "mismatch_rate " << fmt_g12(mismatch_rate()) << "\n";

    os << "confusion " << n_classes << "\n";
    for (int t = 0; t < n_classes; ++t) {
        for (int p = 0; p < n_classes; ++p) {
            if (p) os << '\t';
            os << confusion_at(t, p);
        }
        os << "\n";
    }

    os << "loss_history " << loss_bits.size() << "\n";
    for (double l : loss_bits) os << fmt_g12(l) << "\n";

    os << "groups " << groups.size() << "\n";
    for (const auto& g : groups)
        os << g.name << '\t' << g.n << '\t' << fmt_g12(g.match_rate) << "\n";

    os << "heatmap_res " << heatmap.res << "\n";
    atomic_write(basepath + ".metrics.txt", os.str());

    if (!heatmap.empty()) {
        std::ostringstream hs;
        hs << "p_center\ttheta_center\tcount\tr_mm\n";
        for (std::size_t c = 0; c < heatmap.cells(); ++c) {
            hs << fmt_g12(heatmap.p_center[c]) << '\t' << fmt_g12(heatmap.theta_center[c])
               << '\t' << heatmap.count[c] << '\t' << fmt_g12(heatmap.r_mm[c]) << "\n";
        }
        atomic_write(basepath + ".heatmap.tsv", hs.str());
    }
}

MetricsReport MetricsReport::load(const std::string& basepath) {
    std::istringstream is(read_file(basepath + ".metrics.txt"));
    std::string line;
    if (!std::getline(is, line) || line != "bellml-metrics v1")
        throw IoError("not a metrics file: " + basepath);

    MetricsReport r;
    auto next_kv = [&](const char* key) {
        if (!std::getline(is, line)) throw IoError("truncated metrics file: " + basepath);
        const auto toks = split_ws(line);
        if (toks.size() != 2 || toks[0] != key)
            throw IoError("expected '" + std::string(key) + "' in " + basepath);
        return toks[1];
    };

    r.experiment = next_kv("experiment");
    r.model_name = next_kv("model");
    r.n_classes = static_cast<int>(parse_int(next_kv("n_classes"), basepath));
    r.n_samples = static_cast<std::size_t>(parse_int(next_kv("n_samples"), basepath));
    r.match_rate = parse_double(next_kv("match_rate"), basepath);
    next_kv("mismatch_rate");  // derived; ignored on load

    const int conf_m = static_cast<int>(parse_int(next_kv("confusion"), basepath));
    if (conf_m != r.n_classes) throw IoError("confusion size mismatch in " + basepath);
    r.confusion.resize(static_cast<std::size_t>(conf_m) * conf_m);
    for (int t = 0; t < conf_m; ++t) {
        if (!std::getline(is, line)) throw IoError("truncated metrics file: " + basepath);
        const auto toks = split_ws(line);
        if (toks.size() != static_cast<std::size_t>(conf_m))
            throw IoError("bad confusion row in " + basepath);
        for (int p = 0; p < conf_m; ++p)
            r.confusion[static_cast<std::size_t>(t) * conf_m + p] =
                static_cast<std::size_t>(parse_int(toks[p], basepath));
    }

    const auto n_loss = static_cast<std::size_t>(parse_int(next_kv("loss_history"), basepath));
    r.loss_bits.resize(n_loss);
    for (auto& l : r.loss_bits) {
        if (!std::getline(is, line)) throw IoError("truncated metrics file: " + basepath);
        l = parse_double(line, basepath);
    }

    const auto n_groups = static_cast<std::size_t>(parse_int(next_kv("groups"), basepath));
    r.groups.resize(n_groups);
    for (auto& g : r.groups) {
        if (!std::getline(is, line)) throw IoError("truncated metrics file: " + basepath);
        const auto toks = split_ws(line);
        if (toks.size() != 3) throw IoError("bad group row in " + basepath);
        g.name = toks[0];
        g.n = static_cast<std::size_t>(parse_int(toks[1], basepath));
        g.match_rate = parse_double(toks[2], basepath);
    }

    r.heatmap.res = static_cast<std::size_t>(parse_int(next_kv("heatmap_res"), basepath));
    if (!r.heatmap.empty()) {
        std::istringstream hs(read_file(basepath + ".heatmap.tsv"));
        if (!std::getline(hs, line)) throw IoError("truncated heatmap file: " + basepath);
        const std::size_t cells = r.heatmap.cells();
        r.heatmap.p_center.resize(cells);
        r.heatmap.theta_center.resize(cells);
        r.heatmap.count.resize(cells);
        r.heatmap.r_mm.resize(cells);
        for (std::size_t c = 0; c < cells; ++c) {
            if (!std::getline(hs, line)) throw IoError("truncated heatmap file: " + basepath);
            const auto toks = split_ws(line);
            if (toks.size() != 4) throw IoError("bad heatmap row in " + basepath);
            r.heatmap.p_center[c] = parse_double(toks[0], basepath);
            r.heatmap.theta_center[c] = parse_double(toks[1], basepath);
            r.heatmap.count[c] = static_cast<std::size_t>(parse_int(toks[2], basepath));
            r.heatmap.r_mm[c] = parse_double(toks[3], basepath);
        }
    }
    return r;
}

}  // namespace bellml

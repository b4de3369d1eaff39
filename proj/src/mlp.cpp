#include "bellml/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "bellml/text_io.hpp"

namespace bellml {

namespace {

constexpr double kLn2 = 0.69314718055994530942;
constexpr double kProbFloor = 1e-12;

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

void softmax_inplace(std::vector<double>& z) {
    const double zmax = *std::max_element(z.begin(), z.end());
    double sum = 0.0;
    for (auto& v : z) {
        v = std::exp(v - zmax);
        sum += v;
    }
    for (auto& v : z) v /= sum;
}

// z1 and h sized n_hidden, logits sized n_out; all outputs written in place.
void forward_parts(const MlpModel& m, std::span<const double> x,
                   std::vector<double>& z1, std::vector<double>& h,
                   std::vector<double>& logits) {
    const double* in = x.data();
    if (m.n_hidden > 0) {
        for (std::size_t i = 0; i < m.n_hidden; ++i) {
            double acc = m.b1[i];
            const double* w = m.w1.data() + i * m.n_in;
            for (std::size_t j = 0; j < m.n_in; ++j) acc += w[j] * in[j];
            z1[i] = acc;
            h[i] = acc > 0.0 ? acc : 0.0;
        }
        in = h.data();
    }
    const std::size_t fan = m.fan2();
    for (std::size_t o = 0; o < m.n_out; ++o) {
        double acc = m.b2[o];
        const double* w = m.w2.data() + o * fan;
        for (std::size_t j = 0; j < fan; ++j) acc += w[j] * in[j];
        logits[o] = acc;
    }
}

void apply_output(const MlpModel& m, std::vector<double>& logits) {
    if (m.output_kind == OutputKind::kSigmoid) {
        logits[0] = sigmoid(logits[0]);
    } else {
        softmax_inplace(logits);
    }
}

void check_model_shape(const MlpModel& m) {
    if (m.output_kind == OutputKind::kSigmoid && m.n_out != 1)
        throw std::invalid_argument("sigmoid output requires n_out = 1");
    if (m.output_kind == OutputKind::kSoftmax && m.n_out < 2)
        throw std::invalid_argument("softmax output requires n_out >= 2");
}

int label_classes(const MlpModel& m) {
    return m.output_kind == OutputKind::kSigmoid ? 2 : static_cast<int>(m.n_out);
}

}  // namespace

std::size_t MlpModel::parameter_count() const {
    return w1.size() + b1.size() + w2.size() + b2.size();
}

MlpModel MlpModel::create(std::size_t n_in, std::size_t n_hidden, std::size_t n_out,
                          OutputKind kind, Rng& rng, double init_scale) {
    MlpModel m;
    m.n_in = n_in;
    m.n_hidden = n_hidden;
    m.n_out = n_out;
    m.output_kind = kind;
    check_model_shape(m);

    const double s1 = init_scale > 0.0 ? init_scale : 1.0 / std::sqrt(static_cast<double>(n_in));
    const double s2 =
        init_scale > 0.0 ? init_scale : 1.0 / std::sqrt(static_cast<double>(m.fan2()));
    auto fill = [&rng](std::vector<double>& v, std::size_t n, double s) {
        v.resize(n);
        for (auto& x : v) x = s * (2.0 * rng.uniform() - 1.0);
    };
    fill(m.w1, n_hidden * n_in, s1);
    fill(m.b1, n_hidden, s1);
    fill(m.w2, n_out * m.fan2(), s2);
    fill(m.b2, n_out, s2);
    return m;
}

std::vector<double> MlpModel::forward(std::span<const double> x) const {
    if (x.size() != n_in) throw std::invalid_argument("forward: input length mismatch");
    std::vector<double> z1(n_hidden), h(n_hidden), logits(n_out);
    forward_parts(*this, x, z1, h, logits);
    apply_output(*this, logits);
    return logits;
}

std::vector<double> relu(std::span<const double> z) {
    std::vector<double> out(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) out[i] = z[i] > 0.0 ? z[i] : 0.0;
    return out;
}

double cross_entropy_bits(std::span<const double> pred, std::span<const double> one_hot) {
    if (pred.size() == 1) {
        // Binary sigmoid case: one_hot = (P[class 0], P[class 1]).
        if (one_hot.size() != 2) throw std::invalid_argument("cross_entropy: binary label needs 2 entries");
        const double p1 = std::max(pred[0], kProbFloor);
        const double p0 = std::max(1.0 - pred[0], kProbFloor);
        return -(one_hot[1] * std::log2(p1) + one_hot[0] * std::log2(p0));
    }
    if (pred.size() != one_hot.size())
        throw std::invalid_argument("cross_entropy: size mismatch");
    double h = 0.0;
    for (std::size_t j = 0; j < pred.size(); ++j) {
        if (one_hot[j] != 0.0) h -= one_hot[j] * std::log2(std::max(pred[j], kProbFloor));
    }
    return h;
}

double cross_entropy_bits(std::span<const double> pred, const ClassLabel& label) {
    const auto oh = label.one_hot();
    return cross_entropy_bits(pred, std::span<const double>(oh));
}

namespace {

struct Workspace {
    std::vector<double> z1, h, logits, dlogits, dh;
};

// Forward + backward for one row; accumulates into grads and returns the
// per-sample loss in nats. `scale` is 1/batch_size.
double accumulate_sample(const MlpModel& m, std::span<const double> x, int label,
                         double scale, Gradients& g, Workspace& ws) {
    forward_parts(m, x, ws.z1, ws.h, ws.logits);

    double loss;
    if (m.output_kind == OutputKind::kSigmoid) {
        const double p = sigmoid(ws.logits[0]);
        const double y = label == 1 ? 1.0 : 0.0;
        loss = -(y * std::log(std::max(p, kProbFloor)) +
                 (1.0 - y) * std::log(std::max(1.0 - p, kProbFloor)));
        ws.dlogits[0] = (p - y) * scale;
    } else {
        softmax_inplace(ws.logits);
        loss = -std::log(std::max(ws.logits[static_cast<std::size_t>(label)], kProbFloor));
        for (std::size_t o = 0; o < m.n_out; ++o)
            ws.dlogits[o] = (ws.logits[o] - (static_cast<int>(o) == label ? 1.0 : 0.0)) * scale;
    }

    const double* in = m.n_hidden > 0 ? ws.h.data() : x.data();
    const std::size_t fan = m.fan2();
    for (std::size_t o = 0; o < m.n_out; ++o) {
        const double d = ws.dlogits[o];
        double* gw = g.w2.data() + o * fan;
        for (std::size_t j = 0; j < fan; ++j) gw[j] += d * in[j];
        g.b2[o] += d;
    }

    if (m.n_hidden > 0) {
        for (std::size_t i = 0; i < m.n_hidden; ++i) {
            double acc = 0.0;
            for (std::size_t o = 0; o < m.n_out; ++o) acc += m.w2[o * fan + i] * ws.dlogits[o];
            ws.dh[i] = ws.z1[i] > 0.0 ? acc : 0.0;  // d relu / dz at 0 is 0
        }
        for (std::size_t i = 0; i < m.n_hidden; ++i) {
            const double d = ws.dh[i];
            if (d == 0.0) continue;
            double* gw = g.w1.data() + i * m.n_in;
            for (std::size_t j = 0; j < m.n_in; ++j) gw[j] += d * x[j];
            g.b1[i] += d;
        }
    }
    return loss;
}

Gradients zero_gradients(const MlpModel& m) {
    Gradients g;
    g.w1.assign(m.w1.size(), 0.0);
    g.b1.assign(m.b1.size(), 0.0);
    g.w2.assign(m.w2.size(), 0.0);
    g.b2.assign(m.b2.size(), 0.0);
    return g;
}

}  // namespace

double batch_loss_nats(const MlpModel& model, const LabeledDataset& data,
                       std::span<const std::size_t> rows) {
    if (rows.empty()) throw std::invalid_argument("batch_loss_nats: empty batch");
    Workspace ws{std::vector<double>(model.n_hidden), std::vector<double>(model.n_hidden),
                 std::vector<double>(model.n_out), std::vector<double>(model.n_out),
                 std::vector<double>(model.n_hidden)};
    double total = 0.0;
    for (std::size_t r : rows) {
        forward_parts(model, data.row(r), ws.z1, ws.h, ws.logits);
        if (model.output_kind == OutputKind::kSigmoid) {
            const double p = sigmoid(ws.logits[0]);
            const double y = data.labels[r] == 1 ? 1.0 : 0.0;
            total -= y * std::log(std::max(p, kProbFloor)) +
                     (1.0 - y) * std::log(std::max(1.0 - p, kProbFloor));
        } else {
            softmax_inplace(ws.logits);
            total -= std::log(
                std::max(ws.logits[static_cast<std::size_t>(data.labels[r])], kProbFloor));
        }
    }
    return total / static_cast<double>(rows.size());
}

Gradients gradients(const MlpModel& model, const LabeledDataset& data,
                    std::span<const std::size_t> rows) {
    if (rows.empty()) throw std::invalid_argument("gradients: empty batch");
    Gradients g = zero_gradients(model);
    Workspace ws{std::vector<double>(model.n_hidden), std::vector<double>(model.n_hidden),
                 std::vector<double>(model.n_out), std::vector<double>(model.n_out),
                 std::vector<double>(model.n_hidden)};
    const double scale = 1.0 / static_cast<double>(rows.size());
    for (std::size_t r : rows) accumulate_sample(model, data.row(r), data.labels[r], scale, g, ws);
    return g;
}

TrainResult train(MlpModel model, const LabeledDataset& data, const TrainConfig& cfg) {
    if (data.size() == 0) throw std::invalid_argument("train: empty dataset");
    if (data.n_in != model.n_in) throw std::invalid_argument("train: feature width mismatch");
    if (cfg.batch_size < 1) throw std::invalid_argument("train: batch_size must be >= 1");
    if (cfg.learning_rate <= 0.0) throw std::invalid_argument("train: learning_rate must be > 0");
    if (label_classes(model) != data.n_classes)
        throw std::invalid_argument("train: class count mismatch");

    Rng shuffle_rng(cfg.seed);
    std::vector<std::size_t> order(data.size());
    std::iota(order.begin(), order.end(), std::size_t{0});

    Gradients g = zero_gradients(model);
    Workspace ws{std::vector<double>(model.n_hidden), std::vector<double>(model.n_hidden),
                 std::vector<double>(model.n_out), std::vector<double>(model.n_out),
                 std::vector<double>(model.n_hidden)};

    TrainResult result;
    result.loss_bits.reserve(cfg.epochs);

    for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
        // Fisher-Yates with the pinned RNG; the shuffle stream is part of
        // the reproducibility contract.
        for (std::size_t i = data.size(); i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(shuffle_rng.below(i));
            std::swap(order[i - 1], order[j]);
        }

        double epoch_loss = 0.0;
        for (std::size_t start = 0; start < data.size(); start += cfg.batch_size) {
            const std::size_t count = std::min(cfg.batch_size, data.size() - start);
            const double scale = 1.0 / static_cast<double>(count);

            std::fill(g.w1.begin(), g.w1.end(), 0.0);
            std::fill(g.b1.begin(), g.b1.end(), 0.0);
            std::fill(g.w2.begin(), g.w2.end(), 0.0);
            std::fill(g.b2.begin(), g.b2.end(), 0.0);

            double batch_loss = 0.0;
            for (std::size_t k = 0; k < count; ++k) {
                const std::size_t r = order[start + k];
                batch_loss +=
                    accumulate_sample(model, data.row(r), data.labels[r], scale, g, ws);
            }
            epoch_loss += batch_loss;

            const double lr = cfg.learning_rate;
            for (std::size_t i = 0; i < model.w1.size(); ++i) model.w1[i] -= lr * g.w1[i];
            for (std::size_t i = 0; i < model.b1.size(); ++i) model.b1[i] -= lr * g.b1[i];
            for (std::size_t i = 0; i < model.w2.size(); ++i) model.w2[i] -= lr * g.w2[i];
            for (std::size_t i = 0; i < model.b2.size(); ++i) model.b2[i] -= lr * g.b2[i];
        }
        result.loss_bits.push_back(epoch_loss / static_cast<double>(data.size()) / kLn2);
    }

    result.model = std::move(model);
    return result;
}

ClassLabel predict_label(const MlpModel& model, std::span<const double> x) {
    const auto out = model.forward(x);
    ClassLabel label;
    label.num_classes = label_classes(model);
    if (model.output_kind == OutputKind::kSigmoid) {
        label.class_index = out[0] >= 0.5 ? 1 : 0;
    } else {
        std::size_t best = 0;
        for (std::size_t j = 1; j < out.size(); ++j)
            if (out[j] > out[best]) best = j;
        label.class_index = static_cast<int>(best);
    }
    return label;
}

namespace {

constexpr double kPi = 3.14159265358979323846;

void fill_heatmap(MetricsReport& report, const std::vector<int>& predicted,
                  const LabeledDataset& data, std::size_t res) {
    if (res == 0 || !data.has_aux("p") || !data.has_aux("theta")) return;
    const auto& ps = data.aux_column("p");
    const auto& thetas = data.aux_column("theta");

    HeatmapGrid grid;
    grid.res = res;
    grid.p_center.resize(grid.cells());
    grid.theta_center.resize(grid.cells());
    grid.r_mm.assign(grid.cells(), 0.0);
    grid.count.assign(grid.cells(), 0);
    for (std::size_t ip = 0; ip < res; ++ip)
        for (std::size_t it = 0; it < res; ++it) {
            const std::size_t c = ip * res + it;
            grid.p_center[c] = (static_cast<double>(ip) + 0.5) / static_cast<double>(res);
            grid.theta_center[c] = (static_cast<double>(it) + 0.5) * kPi / static_cast<double>(res);
        }

    std::vector<std::size_t> mismatches(grid.cells(), 0);
    for (std::size_t i = 0; i < data.size(); ++i) {
        auto bin = [res](double v, double span) {
            auto b = static_cast<long long>(v / span * static_cast<double>(res));
            if (b < 0) b = 0;
            if (b >= static_cast<long long>(res)) b = static_cast<long long>(res) - 1;
            return static_cast<std::size_t>(b);
        };
        const std::size_t c = bin(ps[i], 1.0) * res + bin(thetas[i], kPi);
        grid.count[c] += 1;
        if (predicted[i] != data.labels[i]) mismatches[c] += 1;
    }
    for (std::size_t c = 0; c < grid.cells(); ++c)
        grid.r_mm[c] = grid.count[c] ? static_cast<double>(mismatches[c]) /
                                           static_cast<double>(grid.count[c])
                                     : 0.0;
    report.heatmap = std::move(grid);
}

}  // namespace

MetricsReport evaluate_predictions(const std::vector<int>& predicted,
                                   const LabeledDataset& data, int n_classes,
                                   std::size_t heatmap_res) {
    if (predicted.size() != data.size())
        throw std::invalid_argument("evaluate_predictions: size mismatch");
    MetricsReport report;
    report.n_classes = n_classes;
    report.n_samples = data.size();
    report.confusion.assign(static_cast<std::size_t>(n_classes) * n_classes, 0);

    std::size_t matches = 0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        const int t = data.labels[i];
        const int p = predicted[i];
        report.confusion[static_cast<std::size_t>(t) * n_classes + p] += 1;
        if (t == p) ++matches;
    }
    report.match_rate =
        data.size() ? static_cast<double>(matches) / static_cast<double>(data.size()) : 0.0;
    fill_heatmap(report, predicted, data, heatmap_res);
    return report;
}

MetricsReport evaluate(const MlpModel& model, const LabeledDataset& data,
                       std::size_t heatmap_res) {
    std::vector<int> predicted(data.size());
    for (std::size_t i = 0; i < data.size(); ++i)
        predicted[i] = predict_label(model, data.row(i)).class_index;
    return evaluate_predictions(predicted, data, label_classes(model), heatmap_res);
}

void MlpModel::save(const std::string& path) const {
    std::ostringstream os;
    os << "bellml-model v1\n";
    os << "n_in " << n_in << "\n";
    os << "n_hidden " << n_hidden << "\n";
    os << "n_out " << n_out << "\n";
    os << "output " << (output_kind == OutputKind::kSigmoid ? "sigmoid" : "softmax") << "\n";
    auto dump = [&os](const char* name, const std::vector<double>& v) {
        os << name << ' ' << v.size() << "\n";
        for (double x : v) os << fmt_g17(x) << "\n";
    };
    dump("w1", w1);
    dump("b1", b1);
    dump("w2", w2);
    dump("b2", b2);
    atomic_write(path, os.str());
}

MlpModel MlpModel::load(const std::string& path) {
    std::istringstream is(read_file(path));
    std::string line;
    if (!std::getline(is, line) || line != "bellml-model v1")
        throw IoError("not a model file: " + path);

    MlpModel m;
    auto next_kv = [&](const char* key) {
        if (!std::getline(is, line)) throw IoError("truncated model file: " + path);
        const auto toks = split_ws(line);
        if (toks.size() != 2 || toks[0] != key)
            throw IoError("expected '" + std::string(key) + "' in " + path);
        return toks[1];
    };
    m.n_in = static_cast<std::size_t>(parse_int(next_kv("n_in"), path));
    m.n_hidden = static_cast<std::size_t>(parse_int(next_kv("n_hidden"), path));
    m.n_out = static_cast<std::size_t>(parse_int(next_kv("n_out"), path));
    const std::string kind = next_kv("output");
    if (kind == "sigmoid") m.output_kind = OutputKind::kSigmoid;
    else if (kind == "softmax") m.output_kind = OutputKind::kSoftmax;
    else throw IoError("unknown output kind '" + kind + "' in " + path);

    auto read_array = [&](const char* name, std::vector<double>& v, std::size_t expect) {
        const auto n = static_cast<std::size_t>(parse_int(next_kv(name), path));
        if (n != expect) throw IoError("unexpected array size for " + std::string(name) + " in " + path);
        v.resize(n);
        for (auto& x : v) {
            if (!std::getline(is, line)) throw IoError("truncated model file: " + path);
            x = parse_double(line, path);
        }
    };
    read_array("w1", m.w1, m.n_hidden * m.n_in);
    read_array("b1", m.b1, m.n_hidden);
    read_array("w2", m.w2, m.n_out * m.fan2());
    read_array("b2", m.b2, m.n_out);
    check_model_shape(m);
    return m;
}

}  // namespace bellml

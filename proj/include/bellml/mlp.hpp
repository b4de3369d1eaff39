#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bellml/dataset.hpp"
#include "bellml/metrics.hpp"
#include "bellml/oracles.hpp"
#include "bellml/rng.hpp"

namespace bellml {

enum class OutputKind { kSigmoid, kSoftmax };

// Feedforward classifier with at most one hidden ReLU layer. n_hidden = 0
// collapses to the linear form sigma(W2 x + b2), which is exactly the
// optimized-CHSH predictor.
struct MlpModel {
    std::size_t n_in = 0;
    std::size_t n_hidden = 0;
    std::size_t n_out = 1;
    OutputKind output_kind = OutputKind::kSigmoid;

    std::vector<double> w1;  // n_hidden x n_in, row-major
    std::vector<double> b1;  // n_hidden
    std::vector<double> w2;  // n_out x fan2 with fan2 = n_hidden (or n_in when n_hidden = 0)
    std::vector<double> b2;  // n_out

    std::size_t fan2() const { return n_hidden > 0 ? n_hidden : n_in; }
    std::size_t parameter_count() const;

    // Weights and biases drawn uniformly from [-s, s]. init_scale <= 0 picks
    // the fan-in default s = 1/sqrt(fan_in) per layer.
    static MlpModel create(std::size_t n_in, std::size_t n_hidden, std::size_t n_out,
                           OutputKind kind, Rng& rng, double init_scale = 0.0);

    // Output probabilities: a single sigmoid value, or a softmax vector that
    // is strictly positive and sums to one.
    std::vector<double> forward(std::span<const double> x) const;

    // Self-describing flat text format (dimension header + row-major weight
    // arrays in decimal); reloadable from any language.
    void save(const std::string& path) const;
    static MlpModel load(const std::string& path);
};

std::vector<double> relu(std::span<const double> z);

// Base-2 categorical cross entropy; predictions are clamped at 1e-12 before
// the logarithm. For the sigmoid case pred has one entry and the label's
// class 1 probability is compared against it.
double cross_entropy_bits(std::span<const double> pred, std::span<const double> one_hot);
double cross_entropy_bits(std::span<const double> pred, const ClassLabel& label);

struct Gradients {
    std::vector<double> w1, b1, w2, b2;
};

// Mean cross-entropy over the given rows, in natural-log units (the
// internal optimization scale; divide by ln 2 for bits).
double batch_loss_nats(const MlpModel& model, const LabeledDataset& data,
                       std::span<const std::size_t> rows);

// Exact backpropagation gradients of batch_loss_nats with respect to all
// parameters. The ReLU subgradient at exactly 0 is 0.
Gradients gradients(const MlpModel& model, const LabeledDataset& data,
                    std::span<const std::size_t> rows);

struct TrainConfig {
    std::size_t batch_size = 32;
    std::size_t epochs = 200;
    double learning_rate = 0.05;
    std::uint64_t seed = 0;     // drives the per-epoch shuffle
    double init_scale = 0.0;    // <= 0: fan-in default
};

struct TrainResult {
    MlpModel model;
    std::vector<double> loss_bits;  // mean training loss per epoch
};

// Mini-batch SGD: every epoch shuffles the row order with the config RNG,
// walks batches of cfg.batch_size (last one may be short) and applies
// theta <- theta - lr * grad. Bit-deterministic for a fixed seed.
TrainResult train(MlpModel model, const LabeledDataset& data, const TrainConfig& cfg);

// Sigmoid: class 1 (separable) iff output >= 0.5. Softmax: argmax with the
// lowest index winning ties.
ClassLabel predict_label(const MlpModel& model, std::span<const double> x);

// Match rate and confusion matrix; when the dataset carries p/theta columns
// and heatmap_res > 0, also the binned mismatch grid R_mm(p, theta) with
// p binned over [0,1] and theta over [0,pi].
MetricsReport evaluate(const MlpModel& model, const LabeledDataset& data,
                       std::size_t heatmap_res = 0);

// Same metrics for an externally supplied prediction column (used by the
// fixed-rule baselines).
MetricsReport evaluate_predictions(const std::vector<int>& predicted,
                                   const LabeledDataset& data, int n_classes,
                                   std::size_t heatmap_res = 0);

}  // namespace bellml

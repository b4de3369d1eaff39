#include "bellml/oracles.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace bellml {

PptVerdict ppt_verdict(const DensityMatrix& rho, const std::vector<std::size_t>& dims,
                       std::size_t which) {
    const ComplexMatrix pt = partial_transpose(rho.matrix, dims, which);
    const double lambda_min = hermitian_eigenvalues(pt).min();

    PptVerdict v;
    v.lambda_min = lambda_min;
    v.entangled = lambda_min < -kEntangledTol;
    v.bipartition = "T" + std::to_string(which);
    return v;
}

double analytic_lambda_min(double p, double theta) {
    return (1.0 - p) / 4.0 - p * std::cos(theta / 2.0) * std::sin(theta / 2.0);
}

ChshSettings chsh_fixed_settings() {
    const auto axes = chsh_fixed_axes();
    return ChshSettings{axes[0].primary, axes[0].secondary, axes[1].primary, axes[1].secondary};
}

double chsh_value(const DensityMatrix& rho, const ChshSettings& settings) {
    if (rho.n_qubits != 2) throw std::invalid_argument("chsh_value: needs a 2-qubit state");
    const ComplexMatrix a = axis_operator(settings.a);
    const ComplexMatrix ap = axis_operator(settings.a_prime);
    const ComplexMatrix b = axis_operator(settings.b);
    const ComplexMatrix bp = axis_operator(settings.b_prime);

    ComplexMatrix pi = kron(a, b);
    pi -= kron(a, bp);
    pi += kron(ap, b);
    pi += kron(ap, bp);
    return expectation(rho.matrix, pi);
}

double witness_plus_value(const DensityMatrix& rho) {
    if (rho.n_qubits != 2) throw std::invalid_argument("witness_plus_value: needs a 2-qubit state");
    constexpr double kPi = 3.14159265358979323846;
    ComplexMatrix w = psi_theta_phi(kPi / 2.0, 0.0).projector();
    w *= -1.0;
    for (std::size_t i = 0; i < 4; ++i) w(i, i) += 0.5;
    return expectation(rho.matrix, w);
}

std::vector<std::size_t> gap_filter(const std::vector<PptVerdict>& verdicts, double g) {
    if (g < 0.0) throw std::invalid_argument("gap_filter: g must be >= 0");
    std::vector<std::size_t> kept;
    kept.reserve(verdicts.size());
    for (std::size_t i = 0; i < verdicts.size(); ++i) {
        const auto& v = verdicts[i];
        if (!v.entangled || std::abs(v.lambda_min) > g) kept.push_back(i);
    }
    return kept;
}

std::vector<double> ClassLabel::one_hot() const {
    std::vector<double> v(num_classes, 0.0);
    v[class_index] = 1.0;
    return v;
}

ClassLabel biseparable_label(BisepSplit split, const DensityMatrix& rho) {
    if (rho.n_qubits != 3)
        throw std::invalid_argument("biseparable_label: needs a 3-qubit state");
    const auto singleton = static_cast<std::size_t>(split);
    const ComplexMatrix pair = partial_trace(rho.matrix, {2, 2, 2}, singleton);
    const PptVerdict v = ppt_verdict(DensityMatrix{pair, 2}, {2, 2}, 1);
    ClassLabel label;
    label.num_classes = 4;
    label.class_index = v.entangled ? 1 + static_cast<int>(split) : 0;
    return label;
}

double min_ppt_lambda_all_cuts(const DensityMatrix& rho) {
    if (rho.n_qubits != 4)
        throw std::invalid_argument("min_ppt_lambda_all_cuts: needs a 4-qubit state");
    const std::vector<std::size_t> dims{2, 2, 2, 2};

    double lambda = std::numeric_limits<double>::infinity();
    for (std::size_t q = 0; q < 4; ++q) {
        const ComplexMatrix pt = partial_transpose(rho.matrix, dims, q);
        lambda = std::min(lambda, hermitian_eigenvalues(pt).min());
    }
    // Two-two cuts: transpose qubit 0 together with each partner; the three
    // pairs {01|23}, {02|13}, {03|12} cover every balanced bipartition.
    for (std::size_t partner = 1; partner < 4; ++partner) {
        ComplexMatrix pt = partial_transpose(rho.matrix, dims, 0);
        pt = partial_transpose(pt, dims, partner);
        lambda = std::min(lambda, hermitian_eigenvalues(pt).min());
    }
    return lambda;
}

FourQubitGroup fourqubit_group(FourQubitChannel channel, const DensityMatrix& rho) {
    if (channel == FourQubitChannel::kBlue) return FourQubitGroup::kIII;
    return min_ppt_lambda_all_cuts(rho) < -kEntangledTol ? FourQubitGroup::kI
                                                         : FourQubitGroup::kII;
}

}  // namespace bellml

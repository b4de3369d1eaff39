#include "bellml/states.hpp"

#include <cmath>
#include <stdexcept>

namespace bellml {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::size_t log2_exact(std::size_t dim) {
    std::size_t n = 0;
    std::size_t d = dim;
    while (d > 1) {
        if (d % 2 != 0) throw std::invalid_argument("dimension must be a power of two");
        d /= 2;
        ++n;
    }
    return n;
}

cplx phase_or_one(cplx z) {
    const double a = std::abs(z);
    return a == 0.0 ? cplx(1.0, 0.0) : z / a;
}

}  // namespace

double PureState::norm() const {
    double s = 0.0;
    for (const auto& a : amplitudes) s += std::norm(a);
    return std::sqrt(s);
}

ComplexMatrix PureState::projector() const {
    ComplexMatrix out(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
            out(i, j) = amplitudes[i] * std::conj(amplitudes[j]);
    return out;
}

bool is_valid_density(const DensityMatrix& rho) {
    if (rho.matrix.rows() != rho.matrix.cols()) return false;
    if (rho.matrix.rows() != (std::size_t{1} << rho.n_qubits)) return false;
    if (rho.matrix.hermiticity_residual() > 1e-10) return false;
    if (std::abs(rho.matrix.trace() - cplx(1.0, 0.0)) > 1e-10) return false;
    return hermitian_eigenvalues(rho.matrix).min() >= -1e-9;
}

ComplexMatrix random_ginibre(Rng& rng, std::size_t dim) {
    if (dim < 1) throw std::invalid_argument("random_ginibre: dim must be >= 1");
    ComplexMatrix g(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) {
            const double re = rng.normal();
            const double im = rng.normal();
            g(i, j) = cplx(re, im);
        }
    return g;
}

DensityMatrix random_density_matrix(Rng& rng, std::size_t dim) {
    const std::size_t n = log2_exact(dim);
    const ComplexMatrix g = random_ginibre(rng, dim);
    ComplexMatrix rho = g * g.adjoint();
    rho *= 1.0 / rho.trace().real();
    return DensityMatrix{std::move(rho), n};
}

ComplexMatrix random_unitary(Rng& rng, std::size_t dim) {
    if (dim < 1) throw std::invalid_argument("random_unitary: dim must be >= 1");
    ComplexMatrix a = random_ginibre(rng, dim);
    ComplexMatrix q = ComplexMatrix::identity(dim);

    // Householder QR; Q accumulates as the product of the reflectors.
    std::vector<cplx> v(dim);
    for (std::size_t k = 0; k < dim; ++k) {
        double xnorm2 = 0.0;
        for (std::size_t i = k; i < dim; ++i) xnorm2 += std::norm(a(i, k));
        const double xnorm = std::sqrt(xnorm2);
        if (xnorm == 0.0) continue;

        const cplx alpha = -phase_or_one(a(k, k)) * xnorm;
        double vnorm2 = 0.0;
        for (std::size_t i = k; i < dim; ++i) {
            v[i] = a(i, k);
            if (i == k) v[i] -= alpha;
            vnorm2 += std::norm(v[i]);
        }
        if (vnorm2 == 0.0) continue;
        const double tau = 2.0 / vnorm2;

        // A <- H A on the trailing block.
        for (std::size_t j = k; j < dim; ++j) {
            cplx dot = 0.0;
            for (std::size_t i = k; i < dim; ++i) dot += std::conj(v[i]) * a(i, j);
            dot *= tau;
            for (std::size_t i = k; i < dim; ++i) a(i, j) -= dot * v[i];
        }
        // Q <- Q H.
        for (std::size_t i = 0; i < dim; ++i) {
            cplx dot = 0.0;
            for (std::size_t j = k; j < dim; ++j) dot += q(i, j) * v[j];
            dot *= tau;
            for (std::size_t j = k; j < dim; ++j) q(i, j) -= dot * std::conj(v[j]);
        }
    }

    // Column phase correction from the R diagonal; makes the draw Haar.
    for (std::size_t j = 0; j < dim; ++j) {
        const cplx s = phase_or_one(a(j, j));
        for (std::size_t i = 0; i < dim; ++i) q(i, j) *= s;
    }
    return q;
}

PureState random_pure_state(Rng& rng, std::size_t dim) {
    if (dim < 1) throw std::invalid_argument("random_pure_state: dim must be >= 1");
    PureState psi;
    psi.dim = dim;
    psi.amplitudes.resize(dim);
    for (auto& amp : psi.amplitudes) {
        const double re = rng.normal();
        const double im = rng.normal();
        amp = cplx(re, im);
    }
    const double n = psi.norm();
    for (auto& amp : psi.amplitudes) amp /= n;
    return psi;
}

PureState psi_theta_phi(double theta, double phi) {
    if (theta < 0.0 || theta > kPi)
        throw std::invalid_argument("psi_theta_phi: theta outside [0, pi]");
    if (phi < 0.0 || phi > 2.0 * kPi)
        throw std::invalid_argument("psi_theta_phi: phi outside [0, 2 pi]");
    PureState psi;
    psi.dim = 4;
    psi.amplitudes = {std::cos(theta / 2.0), 0.0, 0.0,
                      std::polar(std::sin(theta / 2.0), phi)};
    return psi;
}

DensityMatrix depolarized(const PureState& psi, double p) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("depolarized: p outside [0, 1]");
    const std::size_t n = log2_exact(psi.dim);
    ComplexMatrix rho = psi.projector();
    rho *= p;
    const double background = (1.0 - p) / static_cast<double>(psi.dim);
    for (std::size_t i = 0; i < psi.dim; ++i) rho(i, i) += background;
    return DensityMatrix{std::move(rho), n};
}

DensityMatrix random_fully_separable(Rng& rng, std::size_t n_qubits) {
    if (n_qubits < 2 || n_qubits > 4)
        throw std::invalid_argument("random_fully_separable: n_qubits must be 2, 3 or 4");
    const std::size_t k = 1 + static_cast<std::size_t>(rng.below(8));

    std::vector<double> weights(k);
    double wsum = 0.0;
    for (auto& w : weights) {
        w = rng.uniform_open();
        wsum += w;
    }

    const std::size_t dim = std::size_t{1} << n_qubits;
    ComplexMatrix rho(dim, dim);
    for (std::size_t term = 0; term < k; ++term) {
        ComplexMatrix prod = random_density_matrix(rng, 2).matrix;
        for (std::size_t q = 1; q < n_qubits; ++q)
            prod = kron(prod, random_density_matrix(rng, 2).matrix);
        prod *= weights[term] / wsum;
        rho += prod;
    }
    return DensityMatrix{std::move(rho), n_qubits};
}

const char* to_string(BisepSplit split) {
    switch (split) {
        case BisepSplit::kA_BC: return "A|BC";
        case BisepSplit::kB_AC: return "B|AC";
        case BisepSplit::kC_AB: return "C|AB";
    }
    return "?";
}

PureState biseparable_pure(Rng& rng, BisepSplit split) {
    const PureState single = random_pure_state(rng, 2);
    const PureState pair = random_pure_state(rng, 4);

    PureState psi;
    psi.dim = 8;
    psi.amplitudes.resize(8);
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b)
            for (std::size_t c = 0; c < 2; ++c) {
                const std::size_t idx = 4 * a + 2 * b + c;
                switch (split) {
                    case BisepSplit::kA_BC:
                        psi.amplitudes[idx] = single.amplitudes[a] * pair.amplitudes[2 * b + c];
                        break;
                    case BisepSplit::kB_AC:
                        psi.amplitudes[idx] = single.amplitudes[b] * pair.amplitudes[2 * a + c];
                        break;
                    case BisepSplit::kC_AB:
                        psi.amplitudes[idx] = single.amplitudes[c] * pair.amplitudes[2 * a + b];
                        break;
                }
            }
    return psi;
}

DensityMatrix biseparable_mixture(Rng& rng, BisepSplit split, double p) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("biseparable_mixture: p outside [0, 1]");
    const PureState psi = biseparable_pure(rng, split);
    const DensityMatrix sep = random_fully_separable(rng, 3);
    ComplexMatrix rho = psi.projector();
    rho *= p;
    ComplexMatrix noise = sep.matrix;
    noise *= 1.0 - p;
    rho += noise;
    return DensityMatrix{std::move(rho), 3};
}

FourQubitSample fourqubit_mix(Rng& rng, double p_min) {
    if (p_min < 0.0 || p_min >= 1.0)
        throw std::invalid_argument("fourqubit_mix: p_min outside [0, 1)");
    const double p = p_min + (1.0 - p_min) * rng.uniform();
    const PureState psi = random_pure_state(rng, 16);
    const DensityMatrix sep = random_fully_separable(rng, 4);

    ComplexMatrix rho = psi.projector();
    rho *= p;
    ComplexMatrix noise = sep.matrix;
    noise *= 1.0 - p;
    rho += noise;
    return FourQubitSample{DensityMatrix{std::move(rho), 4}, p};
}

}  // namespace bellml

#pragma once

#include <cstddef>
#include <vector>

#include "bellml/complex_matrix.hpp"
#include "bellml/rng.hpp"

namespace bellml {

struct PureState {
    std::size_t dim = 0;
    std::vector<cplx> amplitudes;

    double norm() const;
    ComplexMatrix projector() const;  // |psi><psi|
};

struct DensityMatrix {
    ComplexMatrix matrix;
    std::size_t n_qubits = 0;

    std::size_t dim() const { return matrix.rows(); }
};

// Checks the density-matrix contract: Hermitian within 1e-10, unit trace
// within 1e-10, minimum eigenvalue >= -1e-9. Used by tests and the audit
// dump, not on generator hot paths.
bool is_valid_density(const DensityMatrix& rho);

// dim x dim matrix with independent standard-normal real and imaginary parts.
ComplexMatrix random_ginibre(Rng& rng, std::size_t dim);

// G G^dagger / tr(G G^dagger); induces the Hilbert-Schmidt measure.
DensityMatrix random_density_matrix(Rng& rng, std::size_t dim);

// Haar unitary via Householder QR of a Ginibre draw, with the R-diagonal
// phase correction (zero diagonal entries treated as +1).
ComplexMatrix random_unitary(Rng& rng, std::size_t dim);

// Normalized complex Gaussian vector; Haar-uniform on the sphere.
PureState random_pure_state(Rng& rng, std::size_t dim);

// cos(theta/2)|00> + e^{i phi} sin(theta/2)|11>, big-endian basis.
// Requires theta in [0, pi] and phi in [0, 2 pi].
PureState psi_theta_phi(double theta, double phi);

// p |psi><psi| + (1-p) I / 2^n. Requires p in [0, 1] and a power-of-two dim.
DensityMatrix depolarized(const PureState& psi, double p);

// Convex mixture of tensor products of single-qubit Hilbert-Schmidt states;
// fully separable by construction. The mixture has k terms, k uniform in
// {1,...,8}, with weights u_i / sum(u), u_i uniform on (0,1).
// Draw order (pinned): k, then the k weights, then the k*n qubit factors.
DensityMatrix random_fully_separable(Rng& rng, std::size_t n_qubits);

enum class BisepSplit { kA_BC = 0, kB_AC = 1, kC_AB = 2 };

const char* to_string(BisepSplit split);

// Tensor product of a random 2-dim and a random 4-dim pure state, with the
// 2-dim factor placed on the singleton party of the split via an index
// permutation on the 3-bit basis. Draw order (pinned): 2-dim factor first.
PureState biseparable_pure(Rng& rng, BisepSplit split);

// p |psi_bs><psi_bs| + (1-p) rho_sep on three qubits.
// Draw order (pinned): psi_bs, then rho_sep.
DensityMatrix biseparable_mixture(Rng& rng, BisepSplit split, double p);

struct FourQubitSample {
    DensityMatrix state;  // 16 x 16
    double p;             // mixing weight actually drawn, uniform on [p_min, 1]
};

// p |psi_rand><psi_rand| + (1-p) rho_sep on four qubits with p uniform on
// [p_min, 1]. Draw order (pinned): p, then psi_rand, then rho_sep.
FourQubitSample fourqubit_mix(Rng& rng, double p_min);

}  // namespace bellml

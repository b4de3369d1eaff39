#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "bellml/complex_matrix.hpp"
#include "bellml/features.hpp"
#include "bellml/states.hpp"

namespace bellml {

// |lambda_min| below this is treated as the separable side of the boundary;
// absorbs eigensolver noise so ties break deterministically.
constexpr double kEntangledTol = 1e-12;

struct PptVerdict {
    double lambda_min = 0.0;
    bool entangled = false;
    std::string bipartition;
};

// Minimum eigenvalue of the partial transpose over subsystem `which`.
// Entangled iff lambda_min < -kEntangledTol.
PptVerdict ppt_verdict(const DensityMatrix& rho, const std::vector<std::size_t>& dims,
                       std::size_t which);

// Closed form for the depolarized |psi_theta_phi> family:
// (1-p)/4 - p cos(theta/2) sin(theta/2); independent of phi.
double analytic_lambda_min(double p, double theta);

// The four measurement directions of a CHSH test.
struct ChshSettings {
    MeasurementAxis a, a_prime, b, b_prime;
};

ChshSettings chsh_fixed_settings();

// Tr(rho * Pi) with Pi = ab - ab' + a'b + a'b'.
double chsh_value(const DensityMatrix& rho, const ChshSettings& settings);

// Tr(rho * W+) with W+ = I/2 - |psi+><psi+|; negative values witness
// entanglement, nonnegative on every separable state.
double witness_plus_value(const DensityMatrix& rho);

// Indices of the samples kept by the boundary gap |lambda_min| > g:
// separable samples always survive, entangled ones only when
// |lambda_min| > g. Idempotent.
std::vector<std::size_t> gap_filter(const std::vector<PptVerdict>& verdicts, double g);

struct ClassLabel {
    int class_index = 0;
    int num_classes = 2;

    std::vector<double> one_hot() const;
};

// Four-class label for the three-qubit experiment: class 0 is fully
// separable; classes 1..3 are the A|BC, B|AC, C|AB splits. The generated
// split only sticks when the PPT verdict on the remaining pair (after
// tracing out the singleton party) is entangled.
ClassLabel biseparable_label(BisepSplit split, const DensityMatrix& rho);

enum class FourQubitChannel { kBlue = 0, kGreen = 1 };

enum class FourQubitGroup { kI = 1, kII = 2, kIII = 3 };

// Minimum PPT eigenvalue over all 7 bipartitions of four qubits
// (4 single-party cuts and 3 two-two cuts).
double min_ppt_lambda_all_cuts(const DensityMatrix& rho);

// Blue channel -> group III. Green channel -> group I when the minimum PPT
// eigenvalue over all bipartitions is negative, group II otherwise.
FourQubitGroup fourqubit_group(FourQubitChannel channel, const DensityMatrix& rho);

}  // namespace bellml

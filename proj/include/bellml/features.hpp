#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "bellml/complex_matrix.hpp"
#include "bellml/rng.hpp"
#include "bellml/states.hpp"

namespace bellml {

// Unit vector on the Bloch sphere; n.sigma = nx sx + ny sy + nz sz.
struct MeasurementAxis {
    double nx = 0.0, ny = 0.0, nz = 1.0;

    double norm() const;
};

// 2x2 traceless Hermitian operator n.sigma with eigenvalues +-1.
// Throws if the axis is not unit length (within 1e-12).
ComplexMatrix axis_operator(const MeasurementAxis& axis);

// Uniform on the unit sphere (three Gaussians, normalized).
MeasurementAxis random_axis(Rng& rng);

enum class SchemeKind {
    kTomographic,   // all Pauli words, 4^n - 1 features
    kChshFixed,     // the four CHSH monomials at the fixed angles
    kChshRandom,    // the four CHSH monomials at random angles
    kMermin4,       // abc, a'b'c, ab'c', a'bc'
    kSvetlichny8,   // all eight three-party products of {n, n'}
    kTripleChsh12,  // four CHSH monomials per qubit pair, identity elsewhere
    kFullLocal,     // all products of {I, n, n'}, 3^n - 1 features
};

struct FeatureScheme {
    SchemeKind kind = SchemeKind::kChshFixed;
    std::size_t n_qubits = 2;
    std::size_t n_features = 4;

    static FeatureScheme tomographic(std::size_t n_qubits);
    static FeatureScheme chsh_fixed();
    static FeatureScheme chsh_random();
    static FeatureScheme mermin4();
    static FeatureScheme svetlichny8();
    static FeatureScheme triple_chsh12();
    static FeatureScheme full_local(std::size_t n_qubits);

    // Stable name used by the CLI and in dataset/plan files,
    // e.g. "tomographic", "chsh-fixed", "full-local".
    std::string name() const;
    static FeatureScheme from_name(const std::string& name, std::size_t n_qubits);
};

// The two measurement directions of one party.
struct PartyAxes {
    MeasurementAxis primary;    // n
    MeasurementAxis secondary;  // n'
};

// Fixed CHSH angles: a0 = z, a0' = x, b0 = (x - z)/sqrt(2), b0' = (x + z)/sqrt(2).
std::vector<PartyAxes> chsh_fixed_axes();

// A feature scheme together with the measurement axes it was instantiated
// with and the cached n-qubit observables, one per feature. Immutable after
// construction; extraction is pure.
struct MeasurementPlan {
    FeatureScheme scheme;
    std::vector<PartyAxes> axes;  // one per party; empty for tomographic
    std::vector<ComplexMatrix> operator_cache;
};

// Builds the operator cache. Axis-based schemes draw one axis pair per party
// from `rng` (fixed-angle schemes ignore it). Ordering of the cache is pinned:
// lexicographic in the per-party symbol index (I=0, n=1, n'=2 for Bell-like
// schemes; I, sx, sy, sz for tomographic), except for the Mermin and triple
// CHSH lists which follow their published monomial order.
MeasurementPlan build_plan(const FeatureScheme& scheme, Rng& rng);
MeasurementPlan build_plan(const FeatureScheme& scheme, const std::vector<PartyAxes>& axes);

// feature[i] = Tr(rho * operator_cache[i]); every value lies in [-1, 1].
std::vector<double> extract_features(const DensityMatrix& rho, const MeasurementPlan& plan);

void save_plan(const MeasurementPlan& plan, const std::string& path);
MeasurementPlan load_plan(const std::string& path);

}  // namespace bellml

#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace bellml {

using cplx = std::complex<double>;

// Dense row-major complex matrix. Every matrix in this project is at most
// 16x16 (four qubits), so plain loops are fine everywhere.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols) {}

    static ComplexMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    cplx& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    const std::vector<cplx>& entries() const { return entries_; }

    ComplexMatrix adjoint() const;
    cplx trace() const;

    // Largest entrywise |A - A^dagger|; zero for an exactly Hermitian matrix.
    double hermiticity_residual() const;
    bool is_hermitian(double tol = 1e-10) const { return hermiticity_residual() <= tol; }

    // Largest entrywise |A - B|.
    double max_abs_diff(const ComplexMatrix& other) const;

    ComplexMatrix& operator+=(const ComplexMatrix& o);
    ComplexMatrix& operator-=(const ComplexMatrix& o);
    ComplexMatrix& operator*=(cplx s);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> entries_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(cplx s, ComplexMatrix a);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

// Real eigenvalues of a Hermitian matrix, sorted ascending.
struct HermitianSpectrum {
    std::vector<double> eigenvalues;

    double min() const { return eigenvalues.front(); }
    double max() const { return eigenvalues.back(); }
    double sum() const;
};

// Kronecker product; entry ((i*b.rows+k),(j*b.cols+l)) = a(i,j)*b(k,l).
// Subsystem 0 is the most significant index block.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Transposes the indices of subsystem `which` of a multipartite matrix whose
// subsystem dimensions are `dims` (subsystem 0 most significant).
ComplexMatrix partial_transpose(const ComplexMatrix& rho,
                                const std::vector<std::size_t>& dims,
                                std::size_t which);

// Traces out subsystem `which`; the result lives on the remaining subsystems.
ComplexMatrix partial_trace(const ComplexMatrix& rho,
                            const std::vector<std::size_t>& dims,
                            std::size_t which);

// Cyclic complex Jacobi rotations. Requires hermiticity residual <= 1e-10.
// Converges when the off-diagonal Frobenius norm drops below 1e-13
// (at most 100 sweeps).
HermitianSpectrum hermitian_eigenvalues(const ComplexMatrix& m);

// Re(Tr(rho*obs)). Throws if dimensions mismatch or the trace has an
// imaginary part above 1e-10.
double expectation(const ComplexMatrix& rho, const ComplexMatrix& obs);

const ComplexMatrix& pauli_x();
const ComplexMatrix& pauli_y();
const ComplexMatrix& pauli_z();
const ComplexMatrix& identity2();

}  // namespace bellml

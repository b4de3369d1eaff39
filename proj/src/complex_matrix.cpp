#include "bellml/complex_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace bellml {

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            out(j, i) = std::conj((*this)(i, j));
    return out;
}

cplx ComplexMatrix::trace() const {
    cplx t = 0.0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::hermiticity_residual() const {
    if (!square()) return std::numeric_limits<double>::infinity();
    double worst = 0.0;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i; j < cols_; ++j)
            worst = std::max(worst, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return worst;
}

double ComplexMatrix::max_abs_diff(const ComplexMatrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        return std::numeric_limits<double>::infinity();
    double worst = 0.0;
    for (std::size_t k = 0; k < entries_.size(); ++k)
        worst = std::max(worst, std::abs(entries_[k] - other.entries_[k]));
    return worst;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += o.entries_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= o.entries_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
    for (auto& e : entries_) e *= s;
    return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix product: inner dimensions differ");
    ComplexMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const cplx aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
        }
    return out;
}

double HermitianSpectrum::sum() const {
    return std::accumulate(eigenvalues.begin(), eigenvalues.end(), 0.0);
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const cplx aij = a(i, j);
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    return out;
}

namespace {

std::size_t dims_product(const std::vector<std::size_t>& dims) {
    std::size_t p = 1;
    for (auto d : dims) p *= d;
    return p;
}

void check_partition(const ComplexMatrix& rho, const std::vector<std::size_t>& dims,
                     std::size_t which, const char* op) {
    if (!rho.square())
        throw std::invalid_argument(std::string(op) + ": matrix must be square");
    if (which >= dims.size())
        throw std::invalid_argument(std::string(op) + ": subsystem index out of range");
    if (dims_product(dims) != rho.rows())
        throw std::invalid_argument(std::string(op) + ": subsystem dimensions do not factor the matrix");
}

// Strides of the mixed-radix basis index; subsystem 0 is most significant,
// matching |i1 i2 ... in> -> sum_k i_k 2^(n-k).
std::vector<std::size_t> strides_of(const std::vector<std::size_t>& dims) {
    std::vector<std::size_t> s(dims.size(), 1);
    for (std::size_t k = dims.size(); k-- > 1;) s[k - 1] = s[k] * dims[k];
    return s;
}

}  // namespace

ComplexMatrix partial_transpose(const ComplexMatrix& rho,
                                const std::vector<std::size_t>& dims,
                                std::size_t which) {
    check_partition(rho, dims, which, "partial_transpose");
    const auto strides = strides_of(dims);
    const std::size_t dw = dims[which];
    const std::size_t sw = strides[which];
    const std::size_t n = rho.rows();

    ComplexMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t iw = (i / sw) % dw;
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t jw = (j / sw) % dw;
            // Swap the `which` digit between row and column index.
            const std::size_t ni = i + jw * sw - iw * sw;
            const std::size_t nj = j + iw * sw - jw * sw;
            out(ni, nj) = rho(i, j);
        }
    }
    return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& rho,
                            const std::vector<std::size_t>& dims,
                            std::size_t which) {
    check_partition(rho, dims, which, "partial_trace");
    const auto strides = strides_of(dims);
    const std::size_t dw = dims[which];
    const std::size_t sw = strides[which];
    const std::size_t n = rho.rows();
    const std::size_t m = n / dw;

    // Map a reduced index to a full index with the traced digit set to zero.
    std::vector<std::size_t> embed(m);
    for (std::size_t r = 0, f = 0; r < m; ++f) {
        if ((f / sw) % dw == 0) embed[r++] = f;
    }

    ComplexMatrix out(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            cplx acc = 0.0;
            for (std::size_t k = 0; k < dw; ++k)
                acc += rho(embed[i] + k * sw, embed[j] + k * sw);
            out(i, j) = acc;
        }
    return out;
}

HermitianSpectrum hermitian_eigenvalues(const ComplexMatrix& m) {
    if (!m.square()) throw std::invalid_argument("hermitian_eigenvalues: matrix must be square");
    if (m.hermiticity_residual() > 1e-10)
        throw std::invalid_argument("hermitian_eigenvalues: matrix is not Hermitian");

    const std::size_t n = m.rows();
    // Work on the exactly-Hermitian part (A + A^dagger)/2.
    ComplexMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            a(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));

    constexpr double kOffTol = 1e-13;
    constexpr int kMaxSweeps = 100;

    for (int sweep = 0; sweep < kMaxSweeps && n > 1; ++sweep) {
        double off2 = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off2 += 2.0 * std::norm(a(p, q));
        if (std::sqrt(off2) < kOffTol) break;

        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx apq = a(p, q);
                const double babs = std::abs(apq);
                if (babs == 0.0) continue;
                const cplx phase = apq / babs;

                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double tau = (aqq - app) / (2.0 * babs);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                // A <- U^dagger A U with U the identity except
                // U(p,p)=c, U(p,q)=s*phase, U(q,p)=-s*conj(phase), U(q,q)=c.
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx rp = a(p, k);
                    const cplx rq = a(q, k);
                    a(p, k) = c * rp - s * phase * rq;
                    a(q, k) = s * std::conj(phase) * rp + c * rq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx cp = a(k, p);
                    const cplx cq = a(k, q);
                    a(k, p) = c * cp - s * std::conj(phase) * cq;
                    a(k, q) = s * phase * cp + c * cq;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
            }
        }
    }

    HermitianSpectrum spec;
    spec.eigenvalues.resize(n);
    for (std::size_t i = 0; i < n; ++i) spec.eigenvalues[i] = a(i, i).real();
    std::sort(spec.eigenvalues.begin(), spec.eigenvalues.end());
    return spec;
}

double expectation(const ComplexMatrix& rho, const ComplexMatrix& obs) {
    if (rho.rows() != obs.rows() || rho.cols() != obs.cols() || !rho.square())
        throw std::invalid_argument("expectation: dimension mismatch");
    cplx tr = 0.0;
    for (std::size_t i = 0; i < rho.rows(); ++i)
        for (std::size_t k = 0; k < rho.cols(); ++k)
            tr += rho(i, k) * obs(k, i);
    if (std::abs(tr.imag()) > 1e-10)
        throw std::invalid_argument("expectation: trace has a non-negligible imaginary part");
    return tr.real();
}

namespace {

ComplexMatrix make_pauli(cplx a, cplx b, cplx c, cplx d) {
    ComplexMatrix m(2, 2);
    m(0, 0) = a; m(0, 1) = b; m(1, 0) = c; m(1, 1) = d;
    return m;
}

}  // namespace

const ComplexMatrix& pauli_x() {
    static const ComplexMatrix m = make_pauli(0, 1, 1, 0);
    return m;
}

const ComplexMatrix& pauli_y() {
    static const ComplexMatrix m = make_pauli(0, cplx(0, -1), cplx(0, 1), 0);
    return m;
}

const ComplexMatrix& pauli_z() {
    static const ComplexMatrix m = make_pauli(1, 0, 0, -1);
    return m;
}

const ComplexMatrix& identity2() {
    static const ComplexMatrix m = ComplexMatrix::identity(2);
    return m;
}

}  // namespace bellml

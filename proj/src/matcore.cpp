#include "qcorr/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace qcorr {

namespace {

void check_dim(int n) {
    if (n < 1 || n > ComplexMatrix::max_dim)
        throw DimensionMismatch("matrix dimension out of range: " + std::to_string(n));
}

} // namespace

ComplexMatrix::ComplexMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
    check_dim(rows);
    check_dim(cols);
}

ComplexMatrix::ComplexMatrix(int rows, int cols, std::initializer_list<cplx> entries)
    : ComplexMatrix(rows, cols) {
    if (static_cast<int>(entries.size()) != rows * cols)
        throw DimensionMismatch("entry count does not match dimensions");
    std::copy(entries.begin(), entries.end(), a_.begin());
}

ComplexMatrix ComplexMatrix::identity(int n) {
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("add: shape mismatch");
    for (int i = 0; i < rows_ * cols_; ++i) a_[i] += o.a_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("sub: shape mismatch");
    for (int i = 0; i < rows_ * cols_; ++i) a_[i] -= o.a_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
    for (int i = 0; i < rows_ * cols_; ++i) a_[i] *= s;
    return *this;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
    return r;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
}

ComplexMatrix ComplexMatrix::conjugate() const {
    ComplexMatrix r(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r(i, j) = std::conj((*this)(i, j));
    return r;
}

cplx ComplexMatrix::trace() const {
    if (rows_ != cols_) throw DimensionMismatch("trace of non-square matrix");
    cplx t = 0.0;
    for (int i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (int i = 0; i < rows_ * cols_; ++i) s += std::norm(a_[i]);
    return std::sqrt(s);
}

double ComplexMatrix::hermiticity_defect() const {
    if (rows_ != cols_) return std::numeric_limits<double>::infinity();
    double s = 0.0;
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) s += std::norm((*this)(i, j) - std::conj((*this)(j, i)));
    return std::sqrt(s);
}

bool ComplexMatrix::is_hermitian(double tolerance) const {
    return rows_ == cols_ && hermiticity_defect() <= tolerance;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) throw DimensionMismatch("mul: inner dimensions differ");
    ComplexMatrix r(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx{}) continue;
            for (int j = 0; j < b.cols(); ++j) r(i, j) += aik * b(k, j);
        }
    return r;
}

ComplexMatrix operator*(cplx s, ComplexMatrix m) { return m *= s; }
ComplexMatrix operator*(double s, ComplexMatrix m) { return m *= cplx(s, 0.0); }

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    const int r = a.rows() * b.rows();
    const int c = a.cols() * b.cols();
    if (r > ComplexMatrix::max_dim || c > ComplexMatrix::max_dim)
        throw DimensionMismatch("kron: product dimension exceeds 4");
    ComplexMatrix out(r, c);
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            for (int k = 0; k < b.rows(); ++k)
                for (int l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    return out;
}

cplx hs_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionMismatch("hs_inner: shape mismatch");
    cplx s = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) s += std::conj(a(i, j)) * b(i, j);
    return s;
}

EigenSystem herm_eig(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) throw DimensionMismatch("herm_eig: non-square input");
    if (!m.is_hermitian())
        throw NotHermitian("herm_eig: hermiticity defect " + std::to_string(m.hermiticity_defect()));

    const int n = m.rows();
    ComplexMatrix a = m;
    ComplexMatrix v = ComplexMatrix::identity(n);

    // Cyclic Jacobi: in the (p,q) plane absorb the phase of a_pq, then apply
    // the real rotation that zeroes it. Unconditionally convergent at n <= 4.
    const double scale = std::max(1.0, a.frobenius_norm());
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += 2.0 * std::norm(a(p, q));
        if (std::sqrt(off) <= 1e-15 * scale) break;

        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const cplx apq = a(p, q);
                const double r = std::abs(apq);
                if (r <= 1e-300) continue;
                const cplx phase = apq / r; // e^{i phi}
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double theta = 0.5 * std::atan2(2.0 * r, app - aqq);
                const double c = std::cos(theta);
                const double s = std::sin(theta);
                // 2x2 block of the rotation, U = R(theta) with the phase of
                // a_pq folded into column q: U = [[c, -s],[s e^{-i phi}, c e^{-i phi}]],
                // chosen so that (U^dag A U)_{pq} = 0.
                const cplx u00 = c;
                const cplx u01 = -s;
                const cplx u10 = s * std::conj(phase);
                const cplx u11 = c * std::conj(phase);
                // A <- U^dag A U applied on rows/cols p,q.
                for (int k = 0; k < n; ++k) {
                    const cplx akp = a(k, p), akq = a(k, q);
                    a(k, p) = akp * u00 + akq * u10;
                    a(k, q) = akp * u01 + akq * u11;
                }
                for (int k = 0; k < n; ++k) {
                    const cplx apk = a(p, k), aqk = a(q, k);
                    a(p, k) = std::conj(u00) * apk + std::conj(u10) * aqk;
                    a(q, k) = std::conj(u01) * apk + std::conj(u11) * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    const cplx vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = vkp * u00 + vkq * u10;
                    v(k, q) = vkp * u01 + vkq * u11;
                }
                a(p, q) = std::conj(a(q, p)); // keep the pair numerically Hermitian
            }
        }
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return a(i, i).real() < a(j, j).real(); });

    EigenSystem es;
    es.values.resize(n);
    es.vectors = ComplexMatrix(n, n);
    for (int k = 0; k < n; ++k) {
        es.values[k] = a(order[k], order[k]).real();
        for (int i = 0; i < n; ++i) es.vectors(i, k) = v(i, order[k]);
    }
    return es;
}

std::vector<double> herm_eigvals(const ComplexMatrix& m) { return herm_eig(m).values; }

ComplexMatrix herm_sqrt(const ComplexMatrix& m) {
    EigenSystem es = herm_eig(m);
    const int n = m.rows();
    for (double& lam : es.values) {
        if (lam < -tol::psd_reject)
            throw NotPSD("herm_sqrt: eigenvalue " + std::to_string(lam));
        if (lam < 0.0) lam = 0.0;
    }
    ComplexMatrix r(n, n);
    for (int k = 0; k < n; ++k) {
        const double s = std::sqrt(es.values[k]);
        if (s == 0.0) continue;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                r(i, j) += s * es.vectors(i, k) * std::conj(es.vectors(j, k));
    }
    // symmetrize away rounding
    ComplexMatrix out(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out(i, j) = 0.5 * (r(i, j) + std::conj(r(j, i)));
    return out;
}

const ComplexMatrix& pauli(int i) {
    static const std::array<ComplexMatrix, 4> sigma = {
        ComplexMatrix::identity(2),
        ComplexMatrix(2, 2, {0.0, 1.0, 1.0, 0.0}),
        ComplexMatrix(2, 2, {0.0, cplx(0.0, -1.0), cplx(0.0, 1.0), 0.0}),
        ComplexMatrix(2, 2, {1.0, 0.0, 0.0, -1.0}),
    };
    if (i < 0 || i > 3) throw DimensionMismatch("pauli index out of range");
    return sigma[static_cast<size_t>(i)];
}

} // namespace qcorr

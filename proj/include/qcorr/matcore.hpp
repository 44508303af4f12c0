#ifndef QCORR_MATCORE_HPP
#define QCORR_MATCORE_HPP

#include <array>
#include <complex>
#include <initializer_list>
#include <vector>

#include "qcorr/errors.hpp"
#include "qcorr/tolerances.hpp"

namespace qcorr {

using cplx = std::complex<double>;

/// Dense complex matrix with inline storage, sized for the 1x1 .. 4x4
/// operators this library manipulates (states, Pauli/Kraus operators and
/// their tensor products).
class ComplexMatrix {
public:
    static constexpr int max_dim = 4;

    ComplexMatrix() = default;
    ComplexMatrix(int rows, int cols);
    // Row-major entries; must supply rows*cols of them.
    ComplexMatrix(int rows, int cols, std::initializer_list<cplx> entries);

    static ComplexMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    cplx& operator()(int r, int c) { return a_[r * cols_ + c]; }
    const cplx& operator()(int r, int c) const { return a_[r * cols_ + c]; }

    ComplexMatrix& operator+=(const ComplexMatrix& o);
    ComplexMatrix& operator-=(const ComplexMatrix& o);
    ComplexMatrix& operator*=(cplx s);

    ComplexMatrix adjoint() const;
    ComplexMatrix transpose() const;
    ComplexMatrix conjugate() const;

    cplx trace() const;
    double frobenius_norm() const;
    /// ||M - M^dag||_F
    double hermiticity_defect() const;
    bool is_hermitian(double tolerance = tol::hermiticity) const;

private:
    int rows_ = 0, cols_ = 0;
    std::array<cplx, max_dim * max_dim> a_{};
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(cplx s, ComplexMatrix m);
ComplexMatrix operator*(double s, ComplexMatrix m);

/// Kronecker product. Result dimensions are products of the inputs'.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Hilbert-Schmidt inner product Tr(A^dag B).
cplx hs_inner(const ComplexMatrix& a, const ComplexMatrix& b);

struct EigenSystem {
    std::vector<double> values; // ascending
    ComplexMatrix vectors;      // column k pairs with values[k]
};

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
/// Throws NotHermitian when the defect exceeds tol::hermiticity.
EigenSystem herm_eig(const ComplexMatrix& m);

/// Eigenvalues only, weakly ascending.
std::vector<double> herm_eigvals(const ComplexMatrix& m);

/// Hermitian PSD square root. Eigenvalues in [-tol::eig_clamp, 0) are
/// clamped to zero; anything below -tol::psd_reject throws NotPSD.
ComplexMatrix herm_sqrt(const ComplexMatrix& m);

/// Pauli operator sigma_i for i = 0 (identity), 1, 2, 3.
const ComplexMatrix& pauli(int i);

} // namespace qcorr

#endif

#ifndef QCORR_STATES_HPP
#define QCORR_STATES_HPP

#include <array>

#include "qcorr/matcore.hpp"

namespace qcorr {

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<std::array<double, 3>, 3>;
using Mat4 = std::array<std::array<double, 4>, 4>;

/// Two-qubit density matrix. Construction enforces hermiticity and unit
/// trace; positivity is a separate check (validate_state / is_positive)
/// because non-physical coefficient triples must still produce a matrix
/// for the tetrahedron test.
class DensityMatrix {
public:
    explicit DensityMatrix(ComplexMatrix m);

    const ComplexMatrix& matrix() const { return m_; }
    double min_eigenvalue() const;
    bool is_positive(double tolerance = tol::eig_clamp) const;
    /// Throws NotPhysical unless PSD within tolerance.
    void validate_state() const;

private:
    ComplexMatrix m_;
};

/// Correlation triple (c1, c2, c3) of a Bell-diagonal state.
struct BellDiagonalCoeffs {
    double c1 = 0.0, c2 = 0.0, c3 = 0.0;
};

/// Bloch-Fano data of a two-qubit state. `gamma` holds the expansion
/// coefficients in the orthonormal operator basis sigma_i/sqrt(2) x
/// sigma_j/sqrt(2); x, y, t use the factor-1/2 convention
/// x_i = Tr[rho (sigma_i x 1)]/2, t_ij = Tr[rho (sigma_i x sigma_j)]/2.
/// Numerically gamma = [[1/2, y^T],[x, T]].
struct FanoDecomposition {
    Mat4 gamma{};
    Vec3 x{};
    Vec3 y{};
    Mat3 t{};

    double gamma_norm_sq() const;
};

/// The explicit 4x4 matrix of a Bell-diagonal state with coefficients c.
DensityMatrix from_bell_coeffs(const BellDiagonalCoeffs& c);

/// Eigenvalues mu_{i,j} = (1/4)[1 + (-1)^i c1 - (-1)^{i+j} c2 + (-1)^j c3],
/// returned in the order (0,0), (0,1), (1,0), (1,1).
std::array<double, 4> bell_eigenvalues(const BellDiagonalCoeffs& c);

/// Tetrahedron membership: all four mu >= -tol::tetrahedron.
bool is_physical(const BellDiagonalCoeffs& c);

FanoDecomposition fano_decompose(const DensityMatrix& rho);

/// Inverse of fano_decompose. Throws NotPhysical when the assembled matrix
/// violates the density-matrix invariants beyond tolerance.
DensityMatrix fano_reconstruct(const FanoDecomposition& f);

/// Reduced state of subsystem a (trace over b) as a 2x2 matrix.
ComplexMatrix partial_trace_b(const ComplexMatrix& rho);
/// Reduced state of subsystem b (trace over a).
ComplexMatrix partial_trace_a(const ComplexMatrix& rho);

} // namespace qcorr

#endif

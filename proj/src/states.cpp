#include "qcorr/states.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qcorr {

DensityMatrix::DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {
    if (m_.rows() != 4 || m_.cols() != 4)
        throw DimensionMismatch("DensityMatrix: expected 4x4");
    if (!m_.is_hermitian())
        throw NotHermitian("DensityMatrix: hermiticity defect " +
                           std::to_string(m_.hermiticity_defect()));
    if (std::abs(m_.trace().real() - 1.0) > tol::unit_trace ||
        std::abs(m_.trace().imag()) > tol::unit_trace)
        throw NotPhysical("DensityMatrix: trace != 1");
}

double DensityMatrix::min_eigenvalue() const { return herm_eigvals(m_).front(); }

bool DensityMatrix::is_positive(double tolerance) const {
    return min_eigenvalue() >= -tolerance;
}

void DensityMatrix::validate_state() const {
    const double lam = min_eigenvalue();
    if (lam < -tol::eig_clamp)
        throw NotPhysical("DensityMatrix: negative eigenvalue " + std::to_string(lam));
}

double FanoDecomposition::gamma_norm_sq() const {
    double s = 0.0;
    for (const auto& row : gamma)
        for (double g : row) s += g * g;
    return s;
}

DensityMatrix from_bell_coeffs(const BellDiagonalCoeffs& c) {
    ComplexMatrix m(4, 4);
    m(0, 0) = m(3, 3) = 0.25 * (1.0 + c.c3);
    m(1, 1) = m(2, 2) = 0.25 * (1.0 - c.c3);
    m(0, 3) = m(3, 0) = 0.25 * (c.c1 - c.c2);
    m(1, 2) = m(2, 1) = 0.25 * (c.c1 + c.c2);
    return DensityMatrix(std::move(m));
}

std::array<double, 4> bell_eigenvalues(const BellDiagonalCoeffs& c) {
    std::array<double, 4> mu{};
    int k = 0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const double si = (i == 0) ? 1.0 : -1.0;
            const double sj = (j == 0) ? 1.0 : -1.0;
            mu[k++] = 0.25 * (1.0 + si * c.c1 - si * sj * c.c2 + sj * c.c3);
        }
    return mu;
}

bool is_physical(const BellDiagonalCoeffs& c) {
    const auto mu = bell_eigenvalues(c);
    return *std::min_element(mu.begin(), mu.end()) >= -tol::tetrahedron;
}

namespace {

const ComplexMatrix& pauli_pair(int i, int j) {
    static const auto table = [] {
        std::array<ComplexMatrix, 16> t;
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) t[a * 4 + b] = kron(pauli(a), pauli(b));
        return t;
    }();
    return table[i * 4 + j];
}

} // namespace

FanoDecomposition fano_decompose(const DensityMatrix& rho) {
    FanoDecomposition f;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            f.gamma[i][j] = 0.5 * (rho.matrix() * pauli_pair(i, j)).trace().real();
    for (int i = 0; i < 3; ++i) {
        f.x[i] = f.gamma[i + 1][0];
        f.y[i] = f.gamma[0][i + 1];
        for (int j = 0; j < 3; ++j) f.t[i][j] = f.gamma[i + 1][j + 1];
    }
    return f;
}

DensityMatrix fano_reconstruct(const FanoDecomposition& f) {
    ComplexMatrix m(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            if (f.gamma[i][j] == 0.0) continue;
            m += (0.5 * f.gamma[i][j]) * pauli_pair(i, j);
        }
    DensityMatrix rho(std::move(m)); // throws on trace/hermiticity violations
    if (rho.min_eigenvalue() < -tol::psd_reject)
        throw NotPhysical("fano_reconstruct: matrix is not PSD");
    return rho;
}

ComplexMatrix partial_trace_b(const ComplexMatrix& rho) {
    ComplexMatrix r(2, 2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) r(i, j) += rho(2 * i + k, 2 * j + k);
    return r;
}

ComplexMatrix partial_trace_a(const ComplexMatrix& rho) {
    ComplexMatrix r(2, 2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) r(i, j) += rho(2 * k + i, 2 * k + j);
    return r;
}

} // namespace qcorr

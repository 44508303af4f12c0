#ifndef QCORR_TOLERANCES_HPP
#define QCORR_TOLERANCES_HPP

// Every numeric tolerance used by the library, in one place.

namespace qcorr::tol {

// Hermiticity defect ||M - M^dag||_F accepted for "Hermitian" inputs.
inline constexpr double hermiticity = 1e-10;

// |Tr(rho) - 1| accepted for a density matrix.
inline constexpr double unit_trace = 1e-10;

// Eigenvalues in [-eig_clamp, 0) are treated as rounding noise and clamped.
inline constexpr double eig_clamp = 1e-10;

// Below -psd_reject the matrix is genuinely not PSD.
inline constexpr double psd_reject = 1e-8;

// Kraus completeness ||sum E^dag E - 1||_F.
inline constexpr double completeness = 1e-12;

// Bell-diagonal coefficients are physical iff min eigenvalue >= -tetrahedron.
inline constexpr double tetrahedron = 1e-12;

// ||x|| below this selects the degenerate-marginal branch of the closed
// formulas and the full-sphere variational search.
inline constexpr double degenerate_marginal = 1e-9;

// Measure values in [-measure_clamp, 0) are clamped to zero.
inline constexpr double measure_clamp = 1e-12;

// A measure below this counts as vanished (ESD / dark-point detection).
inline constexpr double zero_measure = 1e-9;

// Bisection refines the root of (measure - root_offset).
inline constexpr double root_offset = 1e-12;

// Hybrid weights must satisfy |alpha+beta+gamma-1| <= weight_sum.
inline constexpr double weight_sum = 1e-12;

// Tr(rho^2) below this makes the fidelity denominator degenerate.
inline constexpr double fidelity_floor = 1e-14;

} // namespace qcorr::tol

#endif

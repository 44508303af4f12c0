#ifndef QCORR_MEASURES_HPP
#define QCORR_MEASURES_HPP

#include <optional>

#include "qcorr/states.hpp"

namespace qcorr {

/// Von Neumann measurement on subsystem a, given by the Bloch direction of
/// its projective basis: P_+- = (1 +- n.sigma)/2.
class Measurement {
public:
    explicit Measurement(const Vec3& direction);

    const Vec3& direction() const { return n_; }
    /// The pair (P_+, P_-) of 2x2 projectors.
    std::pair<ComplexMatrix, ComplexMatrix> projectors() const;

private:
    Vec3 n_;
};

enum class Method { ClosedForm, Variational };

struct MeasureResult {
    double value = 0.0;
    std::optional<Vec3> optimizer_direction;
    Method method = Method::ClosedForm;
};

/// Controls for the variational search: a fixed Fibonacci lattice scan
/// followed by Nelder-Mead refinement in spherical coordinates from the
/// best lattice points. Fully deterministic; `parallel` only changes how
/// the lattice is evaluated, never the result.
struct OptimizerOptions {
    int lattice_points = 4096;
    int refine_count = 8;
    double objective_tol = 1e-10;
    int max_iterations = 500;
    bool parallel = true;
};

/// (sigma_y x sigma_y) rho^* (sigma_y x sigma_y), conjugation in the
/// computational basis.
DensityMatrix spin_flip(const DensityMatrix& rho);

/// Concurrence via the Hermitian route: the spectrum of sqrt(rho) rho~
/// sqrt(rho) equals that of rho rho~, so no non-Hermitian solver is needed.
MeasureResult concurrence(const DensityMatrix& rho);

/// Closed form for Bell-diagonal states,
/// C = max{0, |c1-c2| - (1-c3), |c1+c2| - (1+c3)} / 2.
MeasureResult concurrence_bd(const BellDiagonalCoeffs& c);

/// Overlap fidelity (Tr rho sigma)^2 / (Tr rho^2 Tr sigma^2).
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Pi^a(rho) = sum_k (P_k x 1) rho (P_k x 1).
DensityMatrix apply_measurement(const DensityMatrix& rho, const Measurement& m);

/// Hilbert-Schmidt MIN, closed form for 2x2:
/// Tr(TT^t) - x^t TT^t x / |x|^2 when the marginal is non-degenerate,
/// Tr(TT^t) - lambda_min(TT^t) when x = 0.
MeasureResult min_closed(const DensityMatrix& rho);

/// MIN of a Bell-diagonal state, (sum c_i^2 - c_0^2)/4 with
/// c_0 = min |c_i|.
MeasureResult min_bd(const BellDiagonalCoeffs& c);

/// Definitional MIN: maximal ||rho - Pi^a(rho)||^2 over measurements that
/// leave the marginal invariant. Serves as the oracle for min_closed.
MeasureResult min_variational(const DensityMatrix& rho, const OptimizerOptions& opts = {});

/// Fidelity-based MIN, closed form.
MeasureResult fmin_closed(const DensityMatrix& rho);

/// F-MIN of a Bell-diagonal state, (sum c_i^2 - c_0^2)/(1 + sum c_i^2).
MeasureResult fmin_bd(const BellDiagonalCoeffs& c);

/// Definitional F-MIN: 1 - min fidelity(rho, Pi^a(rho)) over admissible
/// measurements. Oracle for fmin_closed.
MeasureResult fmin_variational(const DensityMatrix& rho, const OptimizerOptions& opts = {});

} // namespace qcorr

#endif

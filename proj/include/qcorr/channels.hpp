#ifndef QCORR_CHANNELS_HPP
#define QCORR_CHANNELS_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qcorr/states.hpp"

namespace qcorr {

enum class FlipKind { BitFlip, PhaseFlip, BitPhaseFlip };

/// Single-qubit channel in operator-sum form. Construction verifies the
/// trace-preserving condition sum_k E_k^dag E_k = 1.
struct KrausChannel {
    std::vector<ComplexMatrix> ops;
    std::string label;
    std::map<std::string, double> params;

    /// ||sum E^dag E - 1||_F
    double completeness_defect() const;
};

/// Flip channels: E_0 = sqrt(1-p/2) 1, E_1 = sqrt(p/2) sigma, where sigma
/// is sigma_1 (bit), sigma_3 (phase) or sigma_2 (bit-phase).
KrausChannel make_flip_channel(FlipKind kind, double p);

/// Generalized amplitude damping with damping gamma and equilibrium
/// parameter p (four operators).
KrausChannel make_gad_channel(double gamma, double p = 0.5);

/// Depolarizing channel: sqrt(1-gamma) 1 and sqrt(gamma/3) sigma_i.
KrausChannel make_depolarizing_channel(double gamma);

/// Two-sided application: rho -> sum_{i,j} (E_i x E_j) rho (E_i x E_j)^dag.
DensityMatrix apply_local(const KrausChannel& ch, const DensityMatrix& rho);

/// Single application of an explicit two-qubit Kraus list (4x4 operators).
DensityMatrix apply_kraus(const std::vector<ComplexMatrix>& ops, const DensityMatrix& rho);

/// Convex mixture alpha E_BF + beta E_BPF + gamma E_PF of the two-sided
/// flip channels.
DensityMatrix apply_hybrid(double alpha, double beta, double gamma, double p,
                           const DensityMatrix& rho);

/// The same hybrid channel as one merged two-qubit Kraus set
/// {sqrt(alpha) E^BF_i x E^BF_j, ...}; proves the mixture is CPTP.
std::vector<ComplexMatrix> merged_hybrid_kraus(double alpha, double beta, double gamma, double p);

// Analytic Bell-diagonal coefficient maps of the two-sided channels.
BellDiagonalCoeffs flip_map(FlipKind kind, const BellDiagonalCoeffs& c, double p);
BellDiagonalCoeffs hybrid_map(const BellDiagonalCoeffs& c, double alpha, double beta,
                              double gamma, double p);
/// GAD map at equilibrium p = 1/2: (c1, c2, c3) -> ((1-g)c1, (1-g)c2, (1-g)^2 c3).
BellDiagonalCoeffs gad_map(const BellDiagonalCoeffs& c, double gamma);
/// Depolarizing map: c_i -> (4g/3 - 1)^2 c_i.
BellDiagonalCoeffs depolarizing_map(const BellDiagonalCoeffs& c, double gamma);

/// gamma = 1 - exp(-gamma_rate * t).
double gamma_of_time(double gamma_rate, double t);

enum class ChannelFamily { BitFlip, PhaseFlip, BitPhaseFlip, Hybrid, Gad, Depolarizing };

std::string to_string(ChannelFamily family);
ChannelFamily channel_family_from_string(const std::string& name);

/// Channel configuration as it appears in CLI configs; field names match
/// the serialized record {family, p?, alpha?, beta?, gamma?, gamma_rate?,
/// equilibrium_p?}.
struct ChannelSpec {
    ChannelFamily family = ChannelFamily::Hybrid;
    std::optional<double> p;
    std::optional<double> alpha;
    std::optional<double> beta;
    std::optional<double> gamma;
    std::optional<double> gamma_rate;
    std::optional<double> equilibrium_p;

    /// Throws BadProbability / BadWeights on invalid parameters.
    void validate() const;

    /// Gad/depolarizing specs with a decay rate sweep over time.
    bool sweeps_time() const;
    /// "p" for flip families and hybrid, "gamma" or "t" otherwise.
    std::string param_name() const;

    /// Evolved coefficients at the given sweep-parameter value (p, gamma,
    /// or t depending on the family).
    BellDiagonalCoeffs evolve(const BellDiagonalCoeffs& c0, double param) const;
};

} // namespace qcorr

#endif

#include "qcorr/channels.hpp"

#include <array>
#include <cmath>
#include <limits>

namespace qcorr {

namespace {

void check_probability(const char* what, double p) {
    if (!(p >= 0.0 && p <= 1.0))
        throw BadProbability(std::string(what) + " must lie in [0, 1], got " + std::to_string(p));
}

void check_weights(double alpha, double beta, double gamma) {
    if (!(alpha >= 0.0 && beta >= 0.0 && gamma >= 0.0))
        throw BadWeights("hybrid weights must be non-negative");
    if (std::abs(alpha + beta + gamma - 1.0) > tol::weight_sum)
        throw BadWeights("hybrid weights must sum to 1");
}

void check_complete(const KrausChannel& ch) {
    const double defect = ch.completeness_defect();
    if (defect > tol::completeness)
        throw NotPhysical(ch.label + ": completeness defect " + std::to_string(defect));
}

} // namespace

double KrausChannel::completeness_defect() const {
    if (ops.empty()) return std::numeric_limits<double>::infinity();
    ComplexMatrix sum(2, 2);
    for (const auto& e : ops) sum += e.adjoint() * e;
    sum -= ComplexMatrix::identity(2);
    return sum.frobenius_norm();
}

KrausChannel make_flip_channel(FlipKind kind, double p) {
    check_probability("p", p);
    KrausChannel ch;
    const int sigma_index = kind == FlipKind::BitFlip ? 1 : kind == FlipKind::BitPhaseFlip ? 2 : 3;
    ch.label = kind == FlipKind::BitFlip ? "bitflip"
               : kind == FlipKind::BitPhaseFlip ? "bitphaseflip"
                                                : "phaseflip";
    ch.params["p"] = p;
    ch.ops.push_back(std::sqrt(1.0 - p / 2.0) * ComplexMatrix::identity(2));
    ch.ops.push_back(std::sqrt(p / 2.0) * pauli(sigma_index));
    check_complete(ch);
    return ch;
}

KrausChannel make_gad_channel(double gamma, double p) {
    check_probability("gamma", gamma);
    check_probability("p", p);
    KrausChannel ch;
    ch.label = "gad";
    ch.params["gamma"] = gamma;
    ch.params["p"] = p;
    const double sp = std::sqrt(p);
    const double sq = std::sqrt(1.0 - p);
    const double sg = std::sqrt(gamma);
    const double su = std::sqrt(1.0 - gamma);
    ch.ops.push_back(sp * ComplexMatrix(2, 2, {1.0, 0.0, 0.0, su}));
    ch.ops.push_back(sp * ComplexMatrix(2, 2, {0.0, sg, 0.0, 0.0}));
    ch.ops.push_back(sq * ComplexMatrix(2, 2, {su, 0.0, 0.0, 1.0}));
    ch.ops.push_back(sq * ComplexMatrix(2, 2, {0.0, 0.0, sg, 0.0}));
    check_complete(ch);
    return ch;
}

KrausChannel make_depolarizing_channel(double gamma) {
    check_probability("gamma", gamma);
    KrausChannel ch;
    ch.label = "depolarizing";
    ch.params["gamma"] = gamma;
    ch.ops.push_back(std::sqrt(1.0 - gamma) * ComplexMatrix::identity(2));
    for (int i = 1; i <= 3; ++i) ch.ops.push_back(std::sqrt(gamma / 3.0) * pauli(i));
    check_complete(ch);
    return ch;
}

DensityMatrix apply_local(const KrausChannel& ch, const DensityMatrix& rho) {
    ComplexMatrix out(4, 4);
    for (const auto& ei : ch.ops)
        for (const auto& ej : ch.ops) {
            const ComplexMatrix k = kron(ei, ej);
            out += k * rho.matrix() * k.adjoint();
        }
    return DensityMatrix(std::move(out));
}

DensityMatrix apply_kraus(const std::vector<ComplexMatrix>& ops, const DensityMatrix& rho) {
    ComplexMatrix out(4, 4);
    for (const auto& e : ops) out += e * rho.matrix() * e.adjoint();
    return DensityMatrix(std::move(out));
}

DensityMatrix apply_hybrid(double alpha, double beta, double gamma, double p,
                           const DensityMatrix& rho) {
    check_weights(alpha, beta, gamma);
    check_probability("p", p);
    const DensityMatrix bf = apply_local(make_flip_channel(FlipKind::BitFlip, p), rho);
    const DensityMatrix bpf = apply_local(make_flip_channel(FlipKind::BitPhaseFlip, p), rho);
    const DensityMatrix pf = apply_local(make_flip_channel(FlipKind::PhaseFlip, p), rho);
    ComplexMatrix out(4, 4);
    out += alpha * bf.matrix();
    out += beta * bpf.matrix();
    out += gamma * pf.matrix();
    return DensityMatrix(std::move(out));
}

std::vector<ComplexMatrix> merged_hybrid_kraus(double alpha, double beta, double gamma, double p) {
    check_weights(alpha, beta, gamma);
    check_probability("p", p);
    const std::array<std::pair<FlipKind, double>, 3> parts = {
        std::pair{FlipKind::BitFlip, alpha},
        std::pair{FlipKind::BitPhaseFlip, beta},
        std::pair{FlipKind::PhaseFlip, gamma},
    };
    std::vector<ComplexMatrix> ops;
    for (const auto& [kind, weight] : parts) {
        const KrausChannel ch = make_flip_channel(kind, p);
        const double w = std::sqrt(weight);
        for (const auto& ei : ch.ops)
            for (const auto& ej : ch.ops) ops.push_back(w * kron(ei, ej));
    }
    return ops;
}

BellDiagonalCoeffs flip_map(FlipKind kind, const BellDiagonalCoeffs& c, double p) {
    check_probability("p", p);
    const double u = (1.0 - p) * (1.0 - p);
    switch (kind) {
        case FlipKind::BitFlip: return {c.c1, u * c.c2, u * c.c3};
        case FlipKind::BitPhaseFlip: return {u * c.c1, c.c2, u * c.c3};
        case FlipKind::PhaseFlip: return {u * c.c1, u * c.c2, c.c3};
    }
    throw Error("flip_map: unreachable");
}

BellDiagonalCoeffs hybrid_map(const BellDiagonalCoeffs& c, double alpha, double beta,
                              double gamma, double p) {
    check_weights(alpha, beta, gamma);
    check_probability("p", p);
    const double u = (1.0 - p) * (1.0 - p);
    return {(alpha + (beta + gamma) * u) * c.c1,
            (beta + (alpha + gamma) * u) * c.c2,
            (gamma + (alpha + beta) * u) * c.c3};
}

BellDiagonalCoeffs gad_map(const BellDiagonalCoeffs& c, double gamma) {
    check_probability("gamma", gamma);
    const double u = 1.0 - gamma;
    return {u * c.c1, u * c.c2, u * u * c.c3};
}

BellDiagonalCoeffs depolarizing_map(const BellDiagonalCoeffs& c, double gamma) {
    check_probability("gamma", gamma);
    const double k = 4.0 * gamma / 3.0 - 1.0;
    const double k2 = k * k;
    return {k2 * c.c1, k2 * c.c2, k2 * c.c3};
}

double gamma_of_time(double gamma_rate, double t) {
    if (gamma_rate < 0.0) throw NegativeInput("gamma_of_time: negative decay rate");
    if (t < 0.0) throw NegativeInput("gamma_of_time: negative time");
    return 1.0 - std::exp(-gamma_rate * t);
}

std::string to_string(ChannelFamily family) {
    switch (family) {
        case ChannelFamily::BitFlip: return "bitflip";
        case ChannelFamily::PhaseFlip: return "phaseflip";
        case ChannelFamily::BitPhaseFlip: return "bitphaseflip";
        case ChannelFamily::Hybrid: return "hybrid";
        case ChannelFamily::Gad: return "gad";
        case ChannelFamily::Depolarizing: return "depolarizing";
    }
    throw Error("to_string(ChannelFamily): unreachable");
}

ChannelFamily channel_family_from_string(const std::string& name) {
    if (name == "bitflip") return ChannelFamily::BitFlip;
    if (name == "phaseflip") return ChannelFamily::PhaseFlip;
    if (name == "bitphaseflip") return ChannelFamily::BitPhaseFlip;
    if (name == "hybrid") return ChannelFamily::Hybrid;
    if (name == "gad") return ChannelFamily::Gad;
    if (name == "depolarizing") return ChannelFamily::Depolarizing;
    throw ValidationError("unknown channel family: " + name);
}

void ChannelSpec::validate() const {
    switch (family) {
        case ChannelFamily::BitFlip:
        case ChannelFamily::PhaseFlip:
        case ChannelFamily::BitPhaseFlip:
            if (p) check_probability("p", *p);
            break;
        case ChannelFamily::Hybrid: {
            if (!alpha || !beta || !gamma)
                throw BadWeights("hybrid channel needs alpha, beta and gamma");
            check_weights(*alpha, *beta, *gamma);
            if (p) check_probability("p", *p);
            break;
        }
        case ChannelFamily::Gad:
            if (gamma) check_probability("gamma", *gamma);
            if (equilibrium_p) check_probability("equilibrium_p", *equilibrium_p);
            if (gamma_rate && *gamma_rate < 0.0)
                throw NegativeInput("gamma_rate must be non-negative");
            break;
        case ChannelFamily::Depolarizing:
            if (gamma) check_probability("gamma", *gamma);
            if (gamma_rate && *gamma_rate < 0.0)
                throw NegativeInput("gamma_rate must be non-negative");
            break;
    }
}

bool ChannelSpec::sweeps_time() const {
    return gamma_rate.has_value() &&
           (family == ChannelFamily::Gad || family == ChannelFamily::Depolarizing);
}

std::string ChannelSpec::param_name() const {
    switch (family) {
        case ChannelFamily::BitFlip:
        case ChannelFamily::PhaseFlip:
        case ChannelFamily::BitPhaseFlip:
        case ChannelFamily::Hybrid:
            return "p";
        default:
            return sweeps_time() ? "t" : "gamma";
    }
}

BellDiagonalCoeffs ChannelSpec::evolve(const BellDiagonalCoeffs& c0, double param) const {
    switch (family) {
        case ChannelFamily::BitFlip: return flip_map(FlipKind::BitFlip, c0, param);
        case ChannelFamily::PhaseFlip: return flip_map(FlipKind::PhaseFlip, c0, param);
        case ChannelFamily::BitPhaseFlip: return flip_map(FlipKind::BitPhaseFlip, c0, param);
        case ChannelFamily::Hybrid: {
            if (!alpha || !beta || !gamma)
                throw BadWeights("hybrid channel needs alpha, beta and gamma");
            return hybrid_map(c0, *alpha, *beta, *gamma, param);
        }
        case ChannelFamily::Gad: {
            // the analytic coefficient map holds only at equilibrium p = 1/2
            if (equilibrium_p && std::abs(*equilibrium_p - 0.5) > tol::weight_sum)
                throw BadProbability("gad sweeps support only equilibrium_p = 0.5");
            const double g = sweeps_time() ? gamma_of_time(*gamma_rate, param) : param;
            return gad_map(c0, g);
        }
        case ChannelFamily::Depolarizing: {
            const double g = sweeps_time() ? gamma_of_time(*gamma_rate, param) : param;
            return depolarizing_map(c0, g);
        }
    }
    throw Error("ChannelSpec::evolve: unreachable");
}

} // namespace qcorr

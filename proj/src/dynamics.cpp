#include "qcorr/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "qcorr/parallel.hpp"

namespace qcorr {

namespace {

double closed_measure(MeasureKind kind, const BellDiagonalCoeffs& c) {
    switch (kind) {
        case MeasureKind::Concurrence: return concurrence_bd(c).value;
        case MeasureKind::Min: return min_bd(c).value;
        case MeasureKind::Fmin: return fmin_bd(c).value;
    }
    throw Error("closed_measure: unreachable");
}

void validate_sweep_inputs(const ChannelSpec& spec, const BellDiagonalCoeffs& c0,
                           const std::vector<double>& grid) {
    spec.validate();
    if (!is_physical(c0)) throw NotPhysical("sweep: initial coefficients outside the tetrahedron");
    if (grid.size() < 2) throw BadGrid("sweep: need at least two grid points");
    for (size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1])) throw BadGrid("sweep: grid must be strictly ascending");
    const bool time_mode = spec.sweeps_time();
    for (double v : grid) {
        if (time_mode) {
            if (v < 0.0) throw BadGrid("sweep: time values must be non-negative");
        } else if (v < 0.0 || v > 1.0) {
            throw BadGrid("sweep: parameter values must lie in [0, 1]");
        }
    }
}

// Bisection for the falling crossing of f through `offset`:
// f(lo) > offset >= f(hi). Returns (location, final bracket).
template <class F>
std::pair<double, std::pair<double, double>> bisect_falling(F&& f, double lo, double hi,
                                                            double offset) {
    for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) > offset)
            lo = mid;
        else
            hi = mid;
    }
    return {0.5 * (lo + hi), {lo, hi}};
}

// Rising crossing: f(lo) <= offset < f(hi).
template <class F>
std::pair<double, std::pair<double, double>> bisect_rising(F&& f, double lo, double hi,
                                                           double offset) {
    for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) <= offset)
            lo = mid;
        else
            hi = mid;
    }
    return {0.5 * (lo + hi), {lo, hi}};
}

// Deterministic ternary search for the minimizer of a unimodal curve.
template <class F>
double ternary_min(F&& f, double lo, double hi) {
    for (int it = 0; it < 300 && hi - lo > 1e-13; ++it) {
        const double m1 = lo + (hi - lo) / 3.0;
        const double m2 = hi - (hi - lo) / 3.0;
        if (f(m1) <= f(m2))
            hi = m2;
        else
            lo = m1;
    }
    return 0.5 * (lo + hi);
}

} // namespace

std::string to_string(MeasureKind kind) {
    switch (kind) {
        case MeasureKind::Concurrence: return "concurrence";
        case MeasureKind::Min: return "min";
        case MeasureKind::Fmin: return "fmin";
    }
    throw Error("to_string(MeasureKind): unreachable");
}

MeasureKind measure_kind_from_string(const std::string& name) {
    if (name == "concurrence") return MeasureKind::Concurrence;
    if (name == "min") return MeasureKind::Min;
    if (name == "fmin") return MeasureKind::Fmin;
    throw ValidationError("unknown measure: " + name);
}

std::string to_string(CriticalPoint::Kind kind) {
    switch (kind) {
        case CriticalPoint::Kind::Esd: return "esd";
        case CriticalPoint::Kind::DarkPoint: return "dark_point";
        case CriticalPoint::Kind::RevivalOnset: return "revival_onset";
    }
    throw Error("to_string(CriticalPoint::Kind): unreachable");
}

std::vector<double> uniform_grid(double start, double stop, int points) {
    if (points < 2) throw BadGrid("uniform_grid: need at least two points");
    if (!(start < stop)) throw BadGrid("uniform_grid: start must be below stop");
    std::vector<double> g(points);
    for (int i = 0; i < points; ++i)
        g[i] = start + (stop - start) * (static_cast<double>(i) / (points - 1));
    return g;
}

SweepResult sweep(const ChannelSpec& spec, const BellDiagonalCoeffs& c0,
                  const std::vector<double>& grid, const SweepOptions& opts) {
    validate_sweep_inputs(spec, c0, grid);

    SweepResult result;
    result.param_name = spec.param_name();
    result.grid = grid;
    result.rows.resize(grid.size());

    // Exceptions must not escape the parallel region; collect and rethrow.
    std::vector<std::string> failure(grid.size());
    OptimizerOptions vopts;
    vopts.parallel = false; // rows carry the parallelism

    parallel_for(static_cast<int>(grid.size()), opts.parallel, [&](int i) {
        try {
            SweepRow row;
            row.param = grid[i];
            row.c = spec.evolve(c0, grid[i]);
            row.concurrence = concurrence_bd(row.c).value;
            row.min = min_bd(row.c).value;
            row.fmin = fmin_bd(row.c).value;
            if (opts.variational_check) {
                const DensityMatrix rho = from_bell_coeffs(row.c);
                const double vmin = min_variational(rho, vopts).value;
                const double vfmin = fmin_variational(rho, vopts).value;
                if (std::abs(vmin - row.min) > opts.check_tol ||
                    std::abs(vfmin - row.fmin) > opts.check_tol)
                    throw Error("variational cross-check failed at " +
                                result.param_name + " = " + std::to_string(grid[i]));
            }
            result.rows[i] = row;
        } catch (const std::exception& e) {
            failure[i] = e.what();
        }
    });

    for (const auto& msg : failure)
        if (!msg.empty()) throw Error("sweep: " + msg);
    return result;
}

std::optional<double> HybridPcResult::active() const {
    // Concurrence vanishes only once every active branch argument is down,
    // so with two verified thresholds the later one wins.
    std::optional<double> best;
    for (const HybridPcBranch& b : {plus, minus})
        if (b.in_range && b.verified && (!best || b.value > *best)) best = b.value;
    return best;
}

HybridPcResult hybrid_pc(const BellDiagonalCoeffs& c, double alpha, double beta, double gamma) {
    if (!(alpha >= 0.0 && beta >= 0.0 && gamma >= 0.0) ||
        std::abs(alpha + beta + gamma - 1.0) > tol::weight_sum)
        throw BadWeights("hybrid_pc: invalid weights");
    if (!is_physical(c)) throw NotPhysical("hybrid_pc: coefficients outside the tetrahedron");

    HybridPcResult result;
    const auto eval_branch = [&](double sign) {
        HybridPcBranch branch;
        const double cpm = std::abs(c.c1 + sign * c.c2);
        const double num = 1.0 - alpha * cpm + sign * c.c3 * gamma;
        const double den = (alpha + gamma) * cpm - sign * 2.0 * alpha * c.c3;
        const double ratio = den != 0.0 ? num / den : -1.0;
        if (den != 0.0 && ratio >= -1e-12) { // rounding can graze zero from below
            branch.value = 1.0 - std::sqrt(std::max(ratio, 0.0));
            branch.in_range = branch.value >= -1e-12 && branch.value <= 1.0 + 1e-12;
            if (branch.in_range) {
                branch.value = std::clamp(branch.value, 0.0, 1.0);
                // Substitute back: the matching concurrence branch argument
                // must actually vanish at p_c.
                const BellDiagonalCoeffs ce = hybrid_map(c, alpha, beta, gamma, branch.value);
                const double arg = sign > 0.0 ? std::abs(ce.c1 + ce.c2) - (1.0 + ce.c3)
                                              : std::abs(ce.c1 - ce.c2) - (1.0 - ce.c3);
                branch.verified = std::abs(arg) <= tol::zero_measure;
            }
        }
        return branch;
    };
    result.plus = eval_branch(1.0);
    result.minus = eval_branch(-1.0);
    return result;
}

std::optional<CriticalPoint> find_esd(const ChannelSpec& spec, const BellDiagonalCoeffs& c0,
                                      const SearchGrid& grid) {
    const std::vector<double> g = uniform_grid(grid.start, grid.stop, grid.points);
    validate_sweep_inputs(spec, c0, g);

    const auto value_at = [&](double p) {
        return closed_measure(MeasureKind::Concurrence, spec.evolve(c0, p));
    };
    std::vector<double> v(g.size());
    for (size_t i = 0; i < g.size(); ++i) v[i] = value_at(g[i]);

    const size_t n = g.size();
    size_t first = n;
    for (size_t i = 0; i < n; ++i) {
        if (v[i] > tol::zero_measure) continue;
        // must stay zero over the trailing window (5 points or to the end)
        const size_t end = std::min(i + 5, n);
        bool stays = true;
        for (size_t j = i; j < end; ++j)
            if (v[j] > tol::zero_measure) { stays = false; break; }
        if (stays) { first = i; break; }
    }
    if (first == n) return std::nullopt; // positive everywhere
    if (first == 0) return std::nullopt; // no entanglement to lose at the start

    auto [loc, bracket] = bisect_falling(value_at, g[first - 1], g[first], tol::root_offset);
    CriticalPoint cp;
    cp.kind = CriticalPoint::Kind::Esd;
    cp.measure = MeasureKind::Concurrence;
    cp.location = loc;
    cp.bracket = bracket;
    return cp;
}

std::vector<CriticalPoint> find_dark_points(const ChannelSpec& spec, const BellDiagonalCoeffs& c0,
                                            MeasureKind measure, const SearchGrid& grid) {
    const std::vector<double> g = uniform_grid(grid.start, grid.stop, grid.points);
    validate_sweep_inputs(spec, c0, g);

    const auto value_at = [&](double p) { return closed_measure(measure, spec.evolve(c0, p)); };
    std::vector<double> v(g.size());
    for (size_t i = 0; i < g.size(); ++i) v[i] = value_at(g[i]);

    std::vector<CriticalPoint> points;
    const size_t n = g.size();
    size_t i = 0;
    while (i < n) {
        if (v[i] > tol::zero_measure) { ++i; continue; }
        size_t j = i;
        while (j + 1 < n && v[j + 1] <= tol::zero_measure) ++j; // run [i, j]

        const bool terminal = (j == n - 1);
        CriticalPoint cp;
        cp.measure = measure;
        if (terminal) {
            cp.kind = CriticalPoint::Kind::Esd;
            if (i == 0) {
                cp.location = g[0];
                cp.bracket = {g[0], g[0]};
            } else {
                auto [loc, br] = bisect_falling(value_at, g[i - 1], g[i], tol::root_offset);
                cp.location = loc;
                cp.bracket = br;
            }
            points.push_back(cp);
        } else {
            // Bracket the dip by the threshold crossings, then pin the zero
            // at the interior minimum.
            double entry = g[0];
            if (i > 0)
                entry = bisect_falling(value_at, g[i - 1], g[i], tol::zero_measure).first;
            const double exit = bisect_rising(value_at, g[j], g[j + 1], tol::zero_measure).first;
            cp.kind = CriticalPoint::Kind::DarkPoint;
            cp.location = ternary_min(value_at, entry, exit);
            cp.bracket = {entry, exit};
            cp.revival = true;
            points.push_back(cp);

            CriticalPoint onset;
            onset.kind = CriticalPoint::Kind::RevivalOnset;
            onset.measure = measure;
            onset.location = g[j]; // last grid point still below threshold
            onset.bracket = {g[j], g[j + 1]};
            points.push_back(onset);
        }
        i = j + 1;
    }
    return points;
}

} // namespace qcorr

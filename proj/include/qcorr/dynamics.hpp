#ifndef QCORR_DYNAMICS_HPP
#define QCORR_DYNAMICS_HPP

#include <optional>
#include <utility>
#include <vector>

#include "qcorr/channels.hpp"
#include "qcorr/measures.hpp"

namespace qcorr {

enum class MeasureKind { Concurrence, Min, Fmin };

std::string to_string(MeasureKind kind);
MeasureKind measure_kind_from_string(const std::string& name);

struct SweepRow {
    double param = 0.0;
    BellDiagonalCoeffs c;
    double concurrence = 0.0;
    double min = 0.0;
    double fmin = 0.0;
};

struct SweepResult {
    std::string param_name;
    std::vector<double> grid;
    std::vector<SweepRow> rows;
};

struct SweepOptions {
    /// Cross-check the closed-form MIN/F-MIN of every row against the
    /// variational search; throws Error on disagreement beyond check_tol.
    bool variational_check = false;
    double check_tol = 1e-6;
    /// Rows are computed in parallel when set; the result is bit-identical
    /// to the serial computation either way.
    bool parallel = true;
};

std::vector<double> uniform_grid(double start, double stop, int points);

/// Evolve c0 along the channel's sweep parameter and evaluate all three
/// measures (closed forms) at every grid point.
SweepResult sweep(const ChannelSpec& spec, const BellDiagonalCoeffs& c0,
                  const std::vector<double>& grid, const SweepOptions& opts = {});

struct CriticalPoint {
    enum class Kind { Esd, DarkPoint, RevivalOnset };
    Kind kind = Kind::Esd;
    MeasureKind measure = MeasureKind::Concurrence;
    double location = 0.0;
    std::pair<double, double> bracket{0.0, 0.0};
    /// DarkPoint only: the measure returns to positive values past the zero.
    bool revival = false;
};

std::string to_string(CriticalPoint::Kind kind);

struct HybridPcBranch {
    double value = 0.0;
    bool in_range = false; // ratio under the square root >= 0 and value in [0, 1]
    bool verified = false; // substituting back really zeroes the concurrence branch
};

struct HybridPcResult {
    HybridPcBranch plus;
    HybridPcBranch minus;
    /// The smallest verified in-range branch value, if any.
    std::optional<double> active() const;
};

/// Analytic hybrid-channel ESD thresholds
/// (p_c)_+- = 1 - sqrt[(1 - alpha c_+- +- c3 gamma)/((alpha+gamma) c_+- -+ 2 alpha c3)]
/// with c_+- = |c1 +- c2|. Each branch is validated by substitution, which
/// weeds out spurious roots (e.g. c_- = 0).
HybridPcResult hybrid_pc(const BellDiagonalCoeffs& c, double alpha, double beta, double gamma);

struct SearchGrid {
    double start = 0.0;
    double stop = 1.0;
    int points = 1001;
};

/// Entanglement sudden death: the smallest parameter value where the
/// concurrence reaches zero and stays zero for the rest of the grid.
/// Refined by bisection on (concurrence - tol::root_offset). Returns
/// nothing when the concurrence is positive everywhere or zero everywhere.
std::optional<CriticalPoint> find_esd(const ChannelSpec& spec, const BellDiagonalCoeffs& c0,
                                      const SearchGrid& grid = {});

/// All zeros of the selected measure along the grid. Interior zero runs
/// become DarkPoint (plus a RevivalOnset at the last grid point of the
/// run); a run that reaches the end of the grid becomes Esd.
std::vector<CriticalPoint> find_dark_points(const ChannelSpec& spec, const BellDiagonalCoeffs& c0,
                                            MeasureKind measure, const SearchGrid& grid = {});

} // namespace qcorr

#endif

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qcorr/dynamics.hpp"
#include "test_support.hpp"

using namespace qcorr;

namespace {

// Analytic ESD locations, derived independently of the bisection path by
// solving the active concurrence-branch equations.
const double kGadBellEsd = 2.0 - std::sqrt(2.0);              // root of u^2 + 2u - 1, u = 1-g
const double kGadPartialEsd = (5.0 - std::sqrt(17.0)) / 2.0;  // root of u^2 + 3u - 2
const double kDepolBellEsd = 0.75 * (1.0 - 1.0 / std::sqrt(3.0));
const double kHybridPartialEsd = 1.0 - std::sqrt(3.0 / 13.0); // root of 1.3u - 0.3, u = (1-p)^2

ChannelSpec hybrid_spec() {
    ChannelSpec s;
    s.family = ChannelFamily::Hybrid;
    s.alpha = 0.4;
    s.beta = 0.4;
    s.gamma = 0.2;
    return s;
}

ChannelSpec gad_spec() {
    ChannelSpec s;
    s.family = ChannelFamily::Gad;
    return s;
}

ChannelSpec depol_spec() {
    ChannelSpec s;
    s.family = ChannelFamily::Depolarizing;
    return s;
}

double row_measure(const SweepRow& row, MeasureKind kind) {
    switch (kind) {
        case MeasureKind::Concurrence: return row.concurrence;
        case MeasureKind::Min: return row.min;
        default: return row.fmin;
    }
}

} // namespace

TEST_CASE("uniform_grid") {
    const auto g = uniform_grid(0.0, 1.0, 1001);
    CHECK(g.size() == 1001);
    CHECK(g.front() == 0.0);
    CHECK(g.back() == 1.0);
    CHECK(g[750] == 0.75); // exact rational hit

    const auto two = uniform_grid(0.25, 0.5, 2);
    CHECK(two == std::vector<double>{0.25, 0.5});

    CHECK_THROWS_AS(uniform_grid(0.0, 1.0, 1), BadGrid);
    CHECK_THROWS_AS(uniform_grid(1.0, 0.0, 5), BadGrid);
}

TEST_CASE("sweep validation") {
    const auto grid = uniform_grid(0.0, 1.0, 11);
    CHECK_THROWS_AS(sweep(hybrid_spec(), {1.0, 1.0, 1.0}, grid), NotPhysical);
    CHECK_THROWS_AS(sweep(hybrid_spec(), {1.0, 1.0, -1.0}, {0.5}), BadGrid);
    CHECK_THROWS_AS(sweep(hybrid_spec(), {1.0, 1.0, -1.0}, {0.5, 0.4}), BadGrid);
    CHECK_THROWS_AS(sweep(hybrid_spec(), {1.0, 1.0, -1.0}, {0.5, 1.4}), BadGrid);
}

TEST_CASE("hybrid sweep reproduces the maximally entangled dynamics") {
    const auto grid = uniform_grid(0.0, 1.0, 1001);
    const SweepResult res = sweep(hybrid_spec(), {1.0, 1.0, -1.0}, grid);
    CHECK(res.param_name == "p");
    CHECK(res.rows.size() == grid.size());

    for (size_t i = 0; i + 1 < res.rows.size(); ++i)
        CHECK(res.rows[i].concurrence > 1e-9); // positive on [0, 1)
    CHECK(res.rows.back().concurrence == 0.0); // exactly zero at p = 1

    for (const SweepRow& row : res.rows) {
        CHECK(is_physical(row.c));
        CHECK(row.min > 1e-3);
        CHECK(row.fmin > 1e-3);
    }
}

TEST_CASE("hybrid sweep of the partially entangled state") {
    const auto grid = uniform_grid(0.0, 1.0, 1001);
    const SweepResult res = sweep(hybrid_spec(), {1.0, 0.5, -0.5}, grid);

    // concurrence dies strictly inside the interval, MIN and F-MIN survive
    CHECK(res.rows.front().concurrence == doctest::Approx(0.5));
    CHECK(res.rows.back().concurrence == 0.0);
    for (const SweepRow& row : res.rows) {
        CHECK(row.min > 1e-3);
        CHECK(row.fmin > 1e-3);
    }
    // monotone non-increasing MIN / F-MIN
    for (size_t i = 1; i < res.rows.size(); ++i) {
        CHECK(res.rows[i].min <= res.rows[i - 1].min + 1e-12);
        CHECK(res.rows[i].fmin <= res.rows[i - 1].fmin + 1e-12);
    }
}

TEST_CASE("gad sweep decays monotonically") {
    const auto grid = uniform_grid(0.0, 1.0, 1001);
    for (const BellDiagonalCoeffs c0 :
         {BellDiagonalCoeffs{1.0, 1.0, -1.0}, BellDiagonalCoeffs{1.0, 0.5, -0.5}}) {
        const SweepResult res = sweep(gad_spec(), c0, grid);
        CHECK(res.param_name == "gamma");
        for (size_t i = 1; i < res.rows.size(); ++i) {
            CHECK(res.rows[i].min <= res.rows[i - 1].min + 1e-12);
            CHECK(res.rows[i].fmin <= res.rows[i - 1].fmin + 1e-12);
        }
        for (size_t i = 0; i + 1 < res.rows.size(); ++i) {
            CHECK(res.rows[i].min > 0.0);
            CHECK(res.rows[i].fmin > 0.0);
        }
    }
}

TEST_CASE("depolarizing sweep: dark point, revival and quartic scaling") {
    const auto grid = uniform_grid(0.0, 1.0, 1001);
    const SweepResult res = sweep(depol_spec(), {1.0, 1.0, -1.0}, grid);

    const double min0 = res.rows.front().min;
    CHECK(std::abs(min0 - 0.5) < 1e-15);

    // MIN(gamma) = (4g/3 - 1)^4 MIN(0) pointwise
    for (size_t i = 0; i < res.rows.size(); ++i) {
        const double k = 4.0 * res.rows[i].param / 3.0 - 1.0;
        CHECK(std::abs(res.rows[i].min - k * k * k * k * min0) < 1e-12);
    }
    CHECK(std::abs(res.rows.back().min - min0 / 81.0) < 1e-12);

    // the min column vanishes in exactly one interior run around 0.75
    std::vector<std::pair<size_t, size_t>> runs;
    for (size_t i = 0; i < res.rows.size();) {
        if (res.rows[i].min > 1e-9) { ++i; continue; }
        size_t j = i;
        while (j + 1 < res.rows.size() && res.rows[j + 1].min <= 1e-9) ++j;
        runs.emplace_back(i, j);
        i = j + 1;
    }
    REQUIRE(runs.size() == 1);
    CHECK(runs[0].first > 0);
    CHECK(runs[0].second < res.rows.size() - 1);
    CHECK(grid[runs[0].first] <= 0.75);
    CHECK(grid[runs[0].second] >= 0.75);
}

TEST_CASE("sweep rows are identical under serial and parallel execution") {
    const auto grid = uniform_grid(0.0, 1.0, 501);
    SweepOptions serial;
    serial.parallel = false;
    SweepOptions parallel;
    parallel.parallel = true;
    for (const ChannelSpec& spec : {hybrid_spec(), gad_spec(), depol_spec()}) {
        const SweepResult a = sweep(spec, {1.0, 0.5, -0.5}, grid, serial);
        const SweepResult b = sweep(spec, {1.0, 0.5, -0.5}, grid, parallel);
        REQUIRE(a.rows.size() == b.rows.size());
        for (size_t i = 0; i < a.rows.size(); ++i) {
            CHECK(a.rows[i].param == b.rows[i].param);
            CHECK(a.rows[i].c.c1 == b.rows[i].c.c1);
            CHECK(a.rows[i].c.c2 == b.rows[i].c.c2);
            CHECK(a.rows[i].c.c3 == b.rows[i].c.c3);
            CHECK(a.rows[i].concurrence == b.rows[i].concurrence);
            CHECK(a.rows[i].min == b.rows[i].min);
            CHECK(a.rows[i].fmin == b.rows[i].fmin);
        }
    }
}

TEST_CASE("sweep with variational cross-check") {
    const auto grid = uniform_grid(0.0, 1.0, 21);
    SweepOptions opts;
    opts.variational_check = true;
    const SweepResult res = sweep(gad_spec(), {1.0, 0.5, -0.5}, grid, opts);
    CHECK(res.rows.size() == grid.size()); // no mismatch thrown
}

TEST_CASE("hybrid_pc branches") {
    // Bell vertex: the + branch verifies at exactly p = 1, the - branch is
    // a spurious root (c_- = 0) and must be rejected by substitution.
    const HybridPcResult bell = hybrid_pc({1.0, 1.0, -1.0}, 0.4, 0.4, 0.2);
    CHECK(bell.plus.in_range);
    CHECK(bell.plus.verified);
    CHECK(std::abs(bell.plus.value - 1.0) < 1e-12);
    CHECK_FALSE(bell.minus.verified);
    REQUIRE(bell.active().has_value());
    CHECK(std::abs(*bell.active() - 1.0) < 1e-12);

    const HybridPcResult partial = hybrid_pc({1.0, 0.5, -0.5}, 0.4, 0.4, 0.2);
    CHECK(partial.plus.verified);
    CHECK(std::abs(partial.plus.value - kHybridPartialEsd) < 1e-12);
    CHECK_FALSE(partial.minus.in_range);
    REQUIRE(partial.active().has_value());

    CHECK_THROWS_AS(hybrid_pc({1.0, 1.0, -1.0}, 0.9, 0.4, 0.2), BadWeights);
    CHECK_THROWS_AS(hybrid_pc({1.0, 1.0, 1.0}, 0.4, 0.4, 0.2), NotPhysical);
}

TEST_CASE("find_esd locates the analytic thresholds") {
    const auto gad_bell = find_esd(gad_spec(), {1.0, 1.0, -1.0});
    REQUIRE(gad_bell.has_value());
    CHECK(std::abs(gad_bell->location - kGadBellEsd) < 1e-6);
    CHECK(gad_bell->kind == CriticalPoint::Kind::Esd);

    const auto gad_partial = find_esd(gad_spec(), {1.0, 0.5, -0.5});
    REQUIRE(gad_partial.has_value());
    CHECK(std::abs(gad_partial->location - kGadPartialEsd) < 1e-6);

    const auto depol_bell = find_esd(depol_spec(), {1.0, 1.0, -1.0});
    REQUIRE(depol_bell.has_value());
    CHECK(std::abs(depol_bell->location - kDepolBellEsd) < 1e-6);

    const auto hybrid_partial = find_esd(hybrid_spec(), {1.0, 0.5, -0.5});
    REQUIRE(hybrid_partial.has_value());
    CHECK(std::abs(hybrid_partial->location - kHybridPartialEsd) < 1e-6);
    const auto pc = hybrid_pc({1.0, 0.5, -0.5}, 0.4, 0.4, 0.2);
    CHECK(std::abs(hybrid_partial->location - *pc.active()) < 1e-6);

    // the Bell state under the hybrid channel only disentangles at p = 1
    const auto hybrid_bell = find_esd(hybrid_spec(), {1.0, 1.0, -1.0});
    REQUIRE(hybrid_bell.has_value());
    CHECK(hybrid_bell->location > 0.999);

    // no event cases
    CHECK_FALSE(find_esd(hybrid_spec(), {1.0, 1.0, -1.0}, {0.0, 0.5, 501}).has_value());
    CHECK_FALSE(find_esd(gad_spec(), {0.0, 0.0, 0.0}).has_value());
}

TEST_CASE("find_dark_points classifies revivals and terminal zeros") {
    // depolarizing MIN: one dark point at 0.75 with revival
    const auto min_points = find_dark_points(depol_spec(), {1.0, 1.0, -1.0}, MeasureKind::Min);
    REQUIRE(min_points.size() == 2);
    CHECK(min_points[0].kind == CriticalPoint::Kind::DarkPoint);
    CHECK(min_points[0].revival);
    CHECK(std::abs(min_points[0].location - 0.75) < 1e-9);
    CHECK(min_points[1].kind == CriticalPoint::Kind::RevivalOnset);
    CHECK(min_points[1].location > min_points[0].location - 6e-3);

    const auto fmin_points = find_dark_points(depol_spec(), {1.0, 1.0, -1.0}, MeasureKind::Fmin);
    REQUIRE(fmin_points.size() == 2);
    CHECK(std::abs(fmin_points[0].location - 0.75) < 1e-9);

    // depolarizing concurrence: terminal zero, no revival
    const auto conc_points =
        find_dark_points(depol_spec(), {1.0, 1.0, -1.0}, MeasureKind::Concurrence);
    REQUIRE(conc_points.size() == 1);
    CHECK(conc_points[0].kind == CriticalPoint::Kind::Esd);
    CHECK_FALSE(conc_points[0].revival);
    CHECK(std::abs(conc_points[0].location - kDepolBellEsd) < 1e-6);

    // hybrid MIN never vanishes
    CHECK(find_dark_points(hybrid_spec(), {1.0, 1.0, -1.0}, MeasureKind::Min).empty());

    // every reported point re-evaluates to (nearly) zero
    for (const auto& pts : {min_points, fmin_points, conc_points}) {
        for (const CriticalPoint& cp : pts) {
            const ChannelSpec spec = depol_spec();
            const BellDiagonalCoeffs c = spec.evolve({1.0, 1.0, -1.0}, cp.location);
            double value = 0.0;
            switch (cp.measure) {
                case MeasureKind::Concurrence: value = concurrence_bd(c).value; break;
                case MeasureKind::Min: value = min_bd(c).value; break;
                case MeasureKind::Fmin: value = fmin_bd(c).value; break;
            }
            CHECK(value < 1e-9);
        }
    }
}

TEST_CASE("revival onset invariant: below threshold at the onset, above one step later") {
    const auto points = find_dark_points(depol_spec(), {1.0, 1.0, -1.0}, MeasureKind::Min);
    REQUIRE(points.size() == 2);
    const CriticalPoint& onset = points[1];
    const double step = 1.0 / 1000.0;
    const ChannelSpec spec = depol_spec();
    CHECK(min_bd(spec.evolve({1.0, 1.0, -1.0}, onset.location)).value < 1e-9);
    CHECK(min_bd(spec.evolve({1.0, 1.0, -1.0}, onset.location + step)).value > 1e-9);
}

TEST_CASE("time-parameterized sweep uses gamma_of_time") {
    ChannelSpec spec = gad_spec();
    spec.gamma_rate = 1.0;
    const auto grid = uniform_grid(0.0, 5.0, 51);
    const SweepResult res = sweep(spec, {1.0, 1.0, -1.0}, grid);
    CHECK(res.param_name == "t");
    // at t the damping is 1 - e^{-t}; coefficients follow the gad map
    const double t = grid[10];
    const BellDiagonalCoeffs expected = gad_map({1.0, 1.0, -1.0}, 1.0 - std::exp(-t));
    CHECK(std::abs(res.rows[10].c.c1 - expected.c1) < 1e-14);
    CHECK(std::abs(res.rows[10].c.c3 - expected.c3) < 1e-14);
}

#include "qcorr/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "qcorr/parallel.hpp"

namespace qcorr {

namespace {

double norm3(const Vec3& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }

Vec3 scaled(const Vec3& v, double s) { return {v[0] * s, v[1] * s, v[2] * s}; }

double clamp_measure(double v) { return v < 0.0 ? 0.0 : v; }

Mat3 gram(const Mat3& t) { // T T^t
    Mat3 g{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double s = 0.0;
            for (int k = 0; k < 3; ++k) s += t[i][k] * t[j][k];
            g[i][j] = s;
        }
    return g;
}

double trace3(const Mat3& m) { return m[0][0] + m[1][1] + m[2][2]; }

double quad_form(const Mat3& m, const Vec3& v) {
    double s = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) s += v[i] * m[i][j] * v[j];
    return s;
}

// Smallest eigenvalue and eigenvector of a real symmetric 3x3,
// sign-normalized for determinism.
std::pair<double, Vec3> sym3_min_eig(const Mat3& m) {
    ComplexMatrix c(3, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) c(i, j) = 0.5 * (m[i][j] + m[j][i]);
    EigenSystem es = herm_eig(c);
    Vec3 v{es.vectors(0, 0).real(), es.vectors(1, 0).real(), es.vectors(2, 0).real()};
    const double n = norm3(v);
    if (n > 0.0) v = scaled(v, 1.0 / n);
    for (int i = 0; i < 3; ++i) {
        if (std::abs(v[i]) > 1e-12) {
            if (v[i] < 0.0) v = scaled(v, -1.0);
            break;
        }
    }
    return {es.values[0], v};
}

// Marginal Bloch data of subsystem a in the factor-1/2 convention:
// x_i = Tr[rho (sigma_i x 1)]/2.
Vec3 marginal_x(const ComplexMatrix& rho) {
    const ComplexMatrix ra = partial_trace_b(rho);
    Vec3 x{};
    for (int i = 0; i < 3; ++i) x[i] = 0.5 * (ra * pauli(i + 1)).trace().real();
    return x;
}

ComplexMatrix measured_state(const ComplexMatrix& rho, const Vec3& n) {
    ComplexMatrix pn(2, 2); // n . sigma
    pn(0, 0) = n[2];
    pn(1, 1) = -n[2];
    pn(0, 1) = cplx(n[0], -n[1]);
    pn(1, 0) = cplx(n[0], n[1]);
    ComplexMatrix plus = ComplexMatrix::identity(2);
    plus += pn;
    plus *= 0.5;
    ComplexMatrix minus = ComplexMatrix::identity(2);
    minus -= pn;
    minus *= 0.5;
    const ComplexMatrix kp = kron(plus, ComplexMatrix::identity(2));
    const ComplexMatrix km = kron(minus, ComplexMatrix::identity(2));
    return kp * rho * kp + km * rho * km; // projectors are Hermitian
}

double min_objective(const ComplexMatrix& rho, const Vec3& n) {
    const ComplexMatrix diff = rho - measured_state(rho, n);
    return hs_inner(diff, diff).real();
}

double fmin_objective(const ComplexMatrix& rho, double tr_rho2, const Vec3& n) {
    const ComplexMatrix post = measured_state(rho, n);
    const double tr_rp = hs_inner(rho, post).real();
    const double tr_p2 = hs_inner(post, post).real();
    return 1.0 - (tr_rp * tr_rp) / (tr_rho2 * tr_p2);
}

Vec3 lattice_direction(int i, int n) {
    static const double golden = M_PI * (3.0 - std::sqrt(5.0));
    const double z = 1.0 - (2.0 * i + 1.0) / n;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * i;
    return {r * std::cos(phi), r * std::sin(phi), z};
}

Vec3 sphere_dir(double theta, double phi) {
    const double st = std::sin(theta);
    return {st * std::cos(phi), st * std::sin(phi), std::cos(theta)};
}

// Nelder-Mead maximization over the sphere in (theta, phi); the start
// simplex is fixed, so the whole refinement is deterministic.
template <class F>
std::pair<double, Vec3> nelder_mead_sphere(F&& objective, const Vec3& start,
                                           const OptimizerOptions& opts) {
    using P2 = std::array<double, 2>;
    auto eval = [&](const P2& p) { return -objective(sphere_dir(p[0], p[1])); };

    const double theta0 = std::acos(std::clamp(start[2], -1.0, 1.0));
    const double phi0 = std::atan2(start[1], start[0]);
    std::array<P2, 3> x = {P2{theta0, phi0}, P2{theta0 + 0.05, phi0}, P2{theta0, phi0 + 0.05}};
    std::array<double, 3> f = {eval(x[0]), eval(x[1]), eval(x[2])};

    auto order = [&] {
        if (f[0] > f[1]) { std::swap(f[0], f[1]); std::swap(x[0], x[1]); }
        if (f[1] > f[2]) { std::swap(f[1], f[2]); std::swap(x[1], x[2]); }
        if (f[0] > f[1]) { std::swap(f[0], f[1]); std::swap(x[0], x[1]); }
    };
    order();

    for (int it = 0; it < opts.max_iterations && f[2] - f[0] > opts.objective_tol; ++it) {
        const P2 centroid = {0.5 * (x[0][0] + x[1][0]), 0.5 * (x[0][1] + x[1][1])};
        auto along = [&](double coeff) {
            return P2{centroid[0] + coeff * (centroid[0] - x[2][0]),
                      centroid[1] + coeff * (centroid[1] - x[2][1])};
        };
        const P2 xr = along(1.0);
        const double fr = eval(xr);
        if (fr < f[0]) {
            const P2 xe = along(2.0);
            const double fe = eval(xe);
            if (fe < fr) { x[2] = xe; f[2] = fe; } else { x[2] = xr; f[2] = fr; }
        } else if (fr < f[1]) {
            x[2] = xr;
            f[2] = fr;
        } else {
            const P2 xc = fr < f[2] ? along(0.5)
                                    : P2{centroid[0] + 0.5 * (x[2][0] - centroid[0]),
                                         centroid[1] + 0.5 * (x[2][1] - centroid[1])};
            const double fc = eval(xc);
            if (fc < std::min(fr, f[2])) {
                x[2] = xc;
                f[2] = fc;
            } else { // shrink toward the best vertex
                for (int i = 1; i < 3; ++i) {
                    x[i] = {x[0][0] + 0.5 * (x[i][0] - x[0][0]), x[0][1] + 0.5 * (x[i][1] - x[0][1])};
                    f[i] = eval(x[i]);
                }
            }
        }
        order();
    }
    return {-f[0], sphere_dir(x[0][0], x[0][1])};
}

// Lattice scan plus refinement; returns the maximal objective value and the
// direction attaining it. Parallel evaluation fills an indexed buffer, so
// the argmax (ties to the lowest index) matches the serial scan exactly.
template <class F>
std::pair<double, Vec3> maximize_over_sphere(F&& objective, const OptimizerOptions& opts) {
    const int n = std::max(1, opts.lattice_points);
    std::vector<double> vals(n);
    parallel_for(n, opts.parallel, [&](int i) { vals[i] = objective(lattice_direction(i, n)); });

    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    const int k = std::min(std::max(opts.refine_count, 1), n);
    std::partial_sort(idx.begin(), idx.begin() + k, idx.end(), [&](int a, int b) {
        if (vals[a] != vals[b]) return vals[a] > vals[b];
        return a < b;
    });

    double best = vals[idx[0]];
    Vec3 best_dir = lattice_direction(idx[0], n);
    for (int j = 0; j < k; ++j) {
        auto [v, d] = nelder_mead_sphere(objective, lattice_direction(idx[j], n), opts);
        if (v > best) {
            best = v;
            best_dir = d;
        }
    }
    const double nn = norm3(best_dir);
    if (nn > 0.0) best_dir = scaled(best_dir, 1.0 / nn);
    return {best, best_dir};
}

template <class F>
MeasureResult variational_measure(const DensityMatrix& rho, F&& objective,
                                  const OptimizerOptions& opts) {
    const Vec3 x = marginal_x(rho.matrix());
    const double nx = norm3(x);
    MeasureResult res;
    res.method = Method::Variational;
    if (nx >= tol::degenerate_marginal) {
        // Non-degenerate marginal: the only admissible measurement basis is
        // the eigenbasis of rho^a, so there is nothing to search.
        const Vec3 dir = scaled(x, 1.0 / nx);
        res.value = clamp_measure(objective(dir));
        res.optimizer_direction = dir;
        return res;
    }
    auto [v, d] = maximize_over_sphere(objective, opts);
    res.value = clamp_measure(v);
    res.optimizer_direction = d;
    return res;
}

} // namespace

Measurement::Measurement(const Vec3& direction) : n_(direction) {
    const double n = norm3(n_);
    if (n < 1e-12) throw DegenerateInput("Measurement: zero direction");
    n_ = scaled(n_, 1.0 / n);
}

std::pair<ComplexMatrix, ComplexMatrix> Measurement::projectors() const {
    ComplexMatrix pn(2, 2);
    pn(0, 0) = n_[2];
    pn(1, 1) = -n_[2];
    pn(0, 1) = cplx(n_[0], -n_[1]);
    pn(1, 0) = cplx(n_[0], n_[1]);
    ComplexMatrix plus = ComplexMatrix::identity(2);
    plus += pn;
    plus *= 0.5;
    ComplexMatrix minus = ComplexMatrix::identity(2);
    minus -= pn;
    minus *= 0.5;
    return {plus, minus};
}

DensityMatrix spin_flip(const DensityMatrix& rho) {
    static const ComplexMatrix yy = kron(pauli(2), pauli(2));
    return DensityMatrix(yy * rho.matrix().conjugate() * yy);
}

MeasureResult concurrence(const DensityMatrix& rho) {
    const ComplexMatrix root = herm_sqrt(rho.matrix());
    const ComplexMatrix flipped = spin_flip(rho).matrix();
    ComplexMatrix r = root * flipped * root;
    ComplexMatrix sym(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) sym(i, j) = 0.5 * (r(i, j) + std::conj(r(j, i)));
    const std::vector<double> ev = herm_eigvals(sym); // ascending
    std::array<double, 4> lam{};
    for (int i = 0; i < 4; ++i) lam[i] = std::sqrt(std::max(0.0, ev[i]));
    return {clamp_measure(lam[3] - lam[2] - lam[1] - lam[0]), std::nullopt, Method::ClosedForm};
}

MeasureResult concurrence_bd(const BellDiagonalCoeffs& c) {
    if (!is_physical(c)) throw NotPhysical("concurrence_bd: coefficients outside the tetrahedron");
    const double b1 = std::abs(c.c1 - c.c2) - (1.0 - c.c3);
    const double b2 = std::abs(c.c1 + c.c2) - (1.0 + c.c3);
    return {0.5 * std::max({0.0, b1, b2}), std::nullopt, Method::ClosedForm};
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
    const double tr_r2 = hs_inner(rho.matrix(), rho.matrix()).real();
    const double tr_s2 = hs_inner(sigma.matrix(), sigma.matrix()).real();
    if (tr_r2 < tol::fidelity_floor || tr_s2 < tol::fidelity_floor)
        throw DegenerateInput("fidelity: vanishing purity");
    const double tr_rs = hs_inner(rho.matrix(), sigma.matrix()).real();
    return (tr_rs * tr_rs) / (tr_r2 * tr_s2);
}

DensityMatrix apply_measurement(const DensityMatrix& rho, const Measurement& m) {
    return DensityMatrix(measured_state(rho.matrix(), m.direction()));
}

MeasureResult min_closed(const DensityMatrix& rho) {
    const FanoDecomposition f = fano_decompose(rho);
    const Mat3 g = gram(f.t);
    const double nx = norm3(f.x);
    MeasureResult res;
    if (nx >= tol::degenerate_marginal) {
        const Vec3 n = scaled(f.x, 1.0 / nx);
        res.value = clamp_measure(trace3(g) - quad_form(g, n));
        res.optimizer_direction = n;
    } else {
        auto [lam, v] = sym3_min_eig(g);
        res.value = clamp_measure(trace3(g) - lam);
        res.optimizer_direction = v;
    }
    return res;
}

MeasureResult min_bd(const BellDiagonalCoeffs& c) {
    if (!is_physical(c)) throw NotPhysical("min_bd: coefficients outside the tetrahedron");
    const std::array<double, 3> a = {std::abs(c.c1), std::abs(c.c2), std::abs(c.c3)};
    int kmin = 0;
    for (int i = 1; i < 3; ++i)
        if (a[i] < a[kmin]) kmin = i; // strict: ties keep the lowest axis
    const double sum = a[0] * a[0] + a[1] * a[1] + a[2] * a[2];
    MeasureResult res;
    res.value = clamp_measure(0.25 * (sum - a[kmin] * a[kmin]));
    Vec3 axis{};
    axis[kmin] = 1.0;
    res.optimizer_direction = axis;
    return res;
}

MeasureResult min_variational(const DensityMatrix& rho, const OptimizerOptions& opts) {
    const ComplexMatrix& m = rho.matrix();
    return variational_measure(rho, [&](const Vec3& n) { return min_objective(m, n); }, opts);
}

MeasureResult fmin_closed(const DensityMatrix& rho) {
    const FanoDecomposition f = fano_decompose(rho);
    const double g2 = f.gamma_norm_sq();
    Mat4 gg{}; // Gamma Gamma^t
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            double s = 0.0;
            for (int k = 0; k < 4; ++k) s += f.gamma[i][k] * f.gamma[j][k];
            gg[i][j] = s;
        }
    const double nx = norm3(f.x);
    MeasureResult res;
    if (nx >= tol::degenerate_marginal) {
        // epsilon = Tr(A Gamma Gamma^t A^t) with the 2x4 row pair
        // a_k = (1, +-x/|x|)/sqrt(2).
        const Vec3 n = scaled(f.x, 1.0 / nx);
        double eps = 0.0;
        for (double sign : {1.0, -1.0}) {
            const std::array<double, 4> row = {1.0, sign * n[0], sign * n[1], sign * n[2]};
            double q = 0.0;
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) q += row[i] * gg[i][j] * row[j];
            eps += 0.5 * q;
        }
        res.value = clamp_measure((g2 - eps) / g2);
        res.optimizer_direction = n;
    } else {
        // Degenerate marginal: minimizing epsilon over the sphere gives
        // (Gamma Gamma^t)_{00} + lambda_min of the lower-right 3x3 block.
        Mat3 g3{};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) g3[i][j] = gg[i + 1][j + 1];
        auto [lam, v] = sym3_min_eig(g3);
        res.value = clamp_measure(1.0 - (gg[0][0] + lam) / g2);
        res.optimizer_direction = v;
    }
    return res;
}

MeasureResult fmin_bd(const BellDiagonalCoeffs& c) {
    if (!is_physical(c)) throw NotPhysical("fmin_bd: coefficients outside the tetrahedron");
    const std::array<double, 3> a = {std::abs(c.c1), std::abs(c.c2), std::abs(c.c3)};
    int kmin = 0;
    for (int i = 1; i < 3; ++i)
        if (a[i] < a[kmin]) kmin = i;
    const double sum = a[0] * a[0] + a[1] * a[1] + a[2] * a[2];
    MeasureResult res;
    res.value = clamp_measure((sum - a[kmin] * a[kmin]) / (1.0 + sum));
    Vec3 axis{};
    axis[kmin] = 1.0;
    res.optimizer_direction = axis;
    return res;
}

MeasureResult fmin_variational(const DensityMatrix& rho, const OptimizerOptions& opts) {
    const ComplexMatrix& m = rho.matrix();
    const double tr2 = hs_inner(m, m).real();
    if (tr2 < tol::fidelity_floor) throw DegenerateInput("fmin_variational: vanishing purity");
    return variational_measure(rho, [&](const Vec3& n) { return fmin_objective(m, tr2, n); }, opts);
}

} // namespace qcorr

// Timing comparison of the serial reference paths against the OpenMP
// kernels: the variational lattice scan and the sweep row loop.
//
//   qcorr_bench [--lattice N] [--points N] [--repeat N]

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <iostream>
#include <string>

#include "qcorr/dynamics.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace qcorr;

namespace {

template <class F>
double timed(F&& f, int repeat) {
    const auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < repeat; ++i) f();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count() / repeat;
}

} // namespace

int main(int argc, char** argv) {
    int lattice = 4096;
    int points = 201;
    int repeat = 3;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--lattice" && i + 1 < argc) lattice = std::atoi(argv[++i]);
        else if (arg == "--points" && i + 1 < argc) points = std::atoi(argv[++i]);
        else if (arg == "--repeat" && i + 1 < argc) repeat = std::atoi(argv[++i]);
        else {
            std::cerr << "usage: qcorr_bench [--lattice N] [--points N] [--repeat N]\n";
            return 2;
        }
    }

#ifdef _OPENMP
    std::cout << "openmp threads: " << omp_get_max_threads() << "\n";
#else
    std::cout << "openmp: not enabled\n";
#endif

    const DensityMatrix rho = from_bell_coeffs({0.9, 0.4, -0.4});
    OptimizerOptions serial_opts, parallel_opts;
    serial_opts.lattice_points = parallel_opts.lattice_points = lattice;
    serial_opts.parallel = false;
    parallel_opts.parallel = true;

    const MeasureResult ref = min_variational(rho, serial_opts);
    const MeasureResult par = min_variational(rho, parallel_opts);
    if (ref.value != par.value) {
        std::cerr << "FAIL: parallel lattice scan diverged from the serial reference\n";
        return 1;
    }
    const double t_scan_serial = timed([&] { (void)min_variational(rho, serial_opts); }, repeat);
    const double t_scan_parallel = timed([&] { (void)min_variational(rho, parallel_opts); }, repeat);

    std::cout << "lattice scan (" << lattice << " directions)\n";
    std::cout << "  serial:   " << t_scan_serial * 1e3 << " ms\n";
    std::cout << "  parallel: " << t_scan_parallel * 1e3 << " ms  (speedup "
              << t_scan_serial / t_scan_parallel << "x)\n";

    ChannelSpec spec;
    spec.family = ChannelFamily::Gad;
    const auto grid = uniform_grid(0.0, 1.0, points);
    SweepOptions sserial, sparallel;
    sserial.parallel = false;
    sserial.variational_check = true;
    sparallel.parallel = true;
    sparallel.variational_check = true;

    const SweepResult a = sweep(spec, {1.0, 0.5, -0.5}, grid, sserial);
    const SweepResult b = sweep(spec, {1.0, 0.5, -0.5}, grid, sparallel);
    for (size_t i = 0; i < a.rows.size(); ++i) {
        if (std::memcmp(&a.rows[i], &b.rows[i], sizeof(SweepRow)) != 0) {
            std::cerr << "FAIL: parallel sweep diverged from the serial reference at row " << i
                      << "\n";
            return 1;
        }
    }
    const double t_sweep_serial = timed([&] { (void)sweep(spec, {1.0, 0.5, -0.5}, grid, sserial); },
                                        repeat);
    const double t_sweep_parallel =
        timed([&] { (void)sweep(spec, {1.0, 0.5, -0.5}, grid, sparallel); }, repeat);

    std::cout << "variational-checked sweep (" << points << " rows)\n";
    std::cout << "  serial:   " << t_sweep_serial * 1e3 << " ms\n";
    std::cout << "  parallel: " << t_sweep_parallel * 1e3 << " ms  (speedup "
              << t_sweep_serial / t_sweep_parallel << "x)\n";
    std::cout << "results identical across execution modes\n";
    return 0;
}

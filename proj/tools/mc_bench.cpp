// Benchmark of the Monte-Carlo ladder kernel: serial reference vs the
// OpenMP-parallel path, on the five-term mixed-exponential model.
#include <chrono>
#include <cstdio>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "ruinkit/oracle.hpp"

using namespace ruinkit;

namespace {

template <class F>
double timed(F&& f) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

} // namespace

int main(int argc, char** argv) {
    long long n = argc > 1 ? std::atoll(argv[1]) : 2000000;
    RiskModel model(1.0, 0.4, 0.0,
                    ClaimDistribution(HyperExponential{
                        {63.0 / 128, 7.0 / 32, 9.0 / 64, 3.0 / 32, 7.0 / 128},
                        {5.0, 4.0, 3.0, 2.0, 1.0}}));
    std::vector<double> grid = {0.0, 1.0, 2.0, 4.0, 8.0};

    McEstimate serial, parallel;
    double ts = timed([&] { serial = mc_aggregate_loss_serial(model, grid, n, 42); });
    double tp = timed([&] { parallel = mc_aggregate_loss(model, grid, n, 42); });

    bool identical = serial.psi_hat == parallel.psi_hat;
#ifdef _OPENMP
    int threads = omp_get_max_threads();
#else
    int threads = 1;
#endif
    std::printf("samples: %lld, threads: %d\n", n, threads);
    std::printf("serial:   %.3f s  (%.2f Msamples/s)\n", ts, n / ts / 1e6);
    std::printf("parallel: %.3f s  (%.2f Msamples/s, speedup %.2fx)\n", tp, n / tp / 1e6,
                ts / tp);
    std::printf("results identical: %s\n", identical ? "yes" : "NO");
    std::printf("psi_hat(0) = %.6f\n", serial.psi_hat[0]);
    return identical ? 0 : 1;
}

// Times the serial reference replication loop against the OpenMP kernel on
// representative workloads and checks the outputs agree bit for bit.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "listmatch/market.hpp"
#include "listmatch/montecarlo.hpp"
#include "listmatch/ode.hpp"

using namespace listmatch;

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

int hardware_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

MarketConfig workload(int n, int d, DistKind kind) {
    MarketConfig config;
    config.n = n;
    config.d = d;
    config.m = n;
    config.dist = DistributionSpec::make(kind, n);
    config.seed = 42;
    return config;
}

void bench_estimator(const char* name, const MarketConfig& config, std::int64_t reps) {
    const std::vector<int> indices = {config.n / 2, config.n};
    const int threads = hardware_threads();

    auto start = std::chrono::steady_clock::now();
    const auto serial = estimate_match_prob(config, indices, reps, 1);
    const double t_serial = seconds_since(start);

    start = std::chrono::steady_clock::now();
    const auto parallel = estimate_match_prob(config, indices, reps, threads);
    const double t_parallel = seconds_since(start);

    bool identical = true;
    for (std::size_t s = 0; s < serial.size(); ++s)
        identical = identical && serial[s].mean == parallel[s].mean &&
                    serial[s].std_err == parallel[s].std_err;

    std::printf("%-28s reps=%-8lld serial %8.3fs  omp(%d) %8.3fs  speedup %5.2fx  identical %s\n",
                name, static_cast<long long>(reps), t_serial, threads, t_parallel,
                t_serial / t_parallel, identical ? "yes" : "NO");
}

void bench_scan() {
    const int threads = hardware_threads();
    auto start = std::chrono::steady_clock::now();
    (void)conjecture_scan(8, 8, 0.0, 1);
    const double t_serial = seconds_since(start);
    start = std::chrono::steady_clock::now();
    (void)conjecture_scan(8, 8, 0.0, threads);
    const double t_parallel = seconds_since(start);
    std::printf("%-28s pairs=64            serial %8.3fs  omp(%d) %8.3fs  speedup %5.2fx\n",
                "conjecture_scan q,d<=8", t_serial, threads, t_parallel,
                t_serial / t_parallel);
}

}  // namespace

int main() {
    std::printf("replication engine: serial reference vs OpenMP kernel\n\n");
    bench_estimator("uniform n=1000 d=4", workload(1000, 4, DistKind::uniform), 20000);
    bench_estimator("two-class n=1000 d=10", workload(1000, 10, DistKind::two_class), 10000);
    bench_estimator("uniform n=100 d=2", workload(100, 2, DistKind::uniform), 200000);
    bench_scan();
    return 0;
}

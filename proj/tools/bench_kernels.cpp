// Timing comparison of the OpenMP kernels against the serial reference
// implementations, with max-abs-difference agreement checks.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "tsarm/numerics.hpp"
#include "tsarm/reference.hpp"
#include "tsarm/rng.hpp"
#include "tsarm/stl.hpp"
#include "tsarm/synth.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

tsarm::RealSeries random_series(std::size_t n, std::uint64_t seed) {
    tsarm::Rng rng(seed);
    tsarm::RealSeries x(n);
    for (double& v : x) v = rng.normal();
    return x;
}

double max_abs_diff(const tsarm::RealSeries& a, const tsarm::RealSeries& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

void bench_dft() {
    // Non-power-of-two sizes so the parallel direct path is exercised.
    for (std::size_t n : {500, 1000, 3000, 6000}) {
        const auto x = random_series(n, 7 + n);
        auto t0 = Clock::now();
        const auto fast = tsarm::dft(x);
        const double t_fast = ms_since(t0);
        t0 = Clock::now();
        const auto ref = tsarm::reference::dft(x);
        const double t_ref = ms_since(t0);
        double diff = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            diff = std::max(diff, std::abs(fast.bins[i] - ref.bins[i]));
        std::printf("dft        n=%6zu   omp %8.2f ms   serial %8.2f ms   maxdiff %.3e\n", n,
                    t_fast, t_ref, diff);
    }
}

void bench_loess() {
    for (std::size_t n : {1000, 4000, 8000}) {
        const auto x = random_series(n, 11 + n);
        const std::size_t window = n / 10;
        auto t0 = Clock::now();
        const auto fast = tsarm::loess_window(x, window, 1);
        const double t_fast = ms_since(t0);
        t0 = Clock::now();
        const auto ref = tsarm::reference::loess_window(x, window, 1);
        const double t_ref = ms_since(t0);
        std::printf("loess      n=%6zu   omp %8.2f ms   serial %8.2f ms   maxdiff %.3e\n", n,
                    t_fast, t_ref, max_abs_diff(fast, ref));
    }
}

void bench_profile() {
    tsarm::SynthConfig cfg;
    cfg.samples_per_class = 50;
    cfg.seed = 99;
    const auto ds = tsarm::gen_dataset(tsarm::DatasetId::parse("A1"), cfg);
    auto t0 = Clock::now();
    const auto profile = tsarm::dataset_profile(ds.samples, {25});
    const double t_par = ms_since(t0);
    std::printf("profile    n=%6zu   omp %8.2f ms   (300 STL decompositions, period 25)\n",
                ds.size(), t_par);
    (void)profile;
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("openmp threads: %d\n", omp_get_max_threads());
#else
    std::printf("built without openmp\n");
#endif
    bench_dft();
    bench_loess();
    bench_profile();
    return 0;
}

#include <chrono>
#include <cstdio>

#include "thetachar/series.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace thetachar;
using clk = std::chrono::steady_clock;

namespace {

// dense-ish rank-2 test mass: a pair of truncated two-variable theta-like sums
GradedSeries lattice_sum(int depth, int stretch) {
    GradedSeries s(2, Rat(depth));
    for (int m = -depth; m <= depth; ++m) {
        for (int n = -depth; n <= depth; ++n) {
            Rat q = rat(m * m + static_cast<long>(stretch) * n * n, 2);
            if (q >= depth) continue;
            s.add_term(q, {rat(m), rat(n)}, rat((m + n) % 2 ? -1 : 1));
        }
    }
    return s;
}

double seconds(clk::time_point a, clk::time_point b) {
    return std::chrono::duration<double>(b - a).count();
}

} // namespace

int main(int argc, char** argv) {
    int depth = argc > 1 ? std::atoi(argv[1]) : 60;
    GradedSeries a = lattice_sum(depth, 1);
    GradedSeries b = lattice_sum(depth, 3);
    std::printf("factors: %zu x %zu terms, depth %d\n", a.term_count(), b.term_count(), depth);

    int threads = 1;
#ifdef _OPENMP
    threads = omp_get_max_threads();
#endif

    auto t0 = clk::now();
    GradedSeries serial = mul_serial(a, b);
    auto t1 = clk::now();
    GradedSeries parallel = mul_parallel(a, b);
    auto t2 = clk::now();

    double ts = seconds(t0, t1);
    double tp = seconds(t1, t2);
    std::printf("serial:   %8.3f s  (%zu result terms)\n", ts, serial.term_count());
    std::printf("parallel: %8.3f s  (%d thread%s)\n", tp, threads, threads == 1 ? "" : "s");
    std::printf("speedup:  %8.2fx\n", tp > 0 ? ts / tp : 0.0);

    if (!(serial == parallel)) {
        std::printf("MISMATCH between kernels\n");
        return 1;
    }
    std::printf("kernels agree exactly\n");
    return 0;
}

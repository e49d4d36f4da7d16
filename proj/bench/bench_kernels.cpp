// Compares the OpenMP counting kernels against the serial reference
// implementations: identical results required, wall times reported.
//
//   ./bench_kernels [scale]     (scale multiplies the default problem sizes)

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <omp.h>

#include "sl2/counting.hpp"

using namespace sl2;

namespace {

struct Row {
    const char *name;
    double serial_s, parallel_s;
    bool equal;
};

void print(const Row &r) {
    std::printf("%-24s serial %8.3fs   omp %8.3fs   speedup %5.2fx   %s\n", r.name,
                r.serial_s, r.parallel_s, r.serial_s / r.parallel_s,
                r.equal ? "results equal" : "RESULTS DIFFER");
}

}  // namespace

int main(int argc, char **argv) {
    double scale = argc > 1 ? std::atof(argv[1]) : 1.0;
    std::printf("threads: %d\n", omp_get_max_threads());

    {
        i64 x = (i64)(4000000 * scale);
        double t0 = omp_get_wtime();
        auto ds = serial::divisor_sieve(x);
        double t1 = omp_get_wtime();
        auto dp = divisor_sieve(x);
        double t2 = omp_get_wtime();
        print({"divisor_sieve", t1 - t0, t2 - t1, ds == dp});
    }
    {
        PeriodicWeight t(5);
        t.values[1] = RatC(Rat(1));
        t.values[2] = RatC(Rat(1, 2));
        i64 x = (i64)(2000000 * scale);
        double t0 = omp_get_wtime();
        cplx s = serial::divisor_correlation(x, 1, t, true);
        double t1 = omp_get_wtime();
        cplx p = divisor_correlation(x, 1, t, true);
        double t2 = omp_get_wtime();
        print({"divisor_correlation", t1 - t0, t2 - t1,
               std::abs(s - p) <= 1e-12 * std::abs(s)});
    }
    {
        CountSpec spec;
        spec.window.A = spec.window.C = spec.window.D = 220 * std::cbrt(scale);
        double t0 = omp_get_wtime();
        cplx s = serial::det_eq_bruteforce(spec);
        double t1 = omp_get_wtime();
        cplx p = det_eq_bruteforce(spec);
        double t2 = omp_get_wtime();
        print({"det_eq_bruteforce", t1 - t0, t2 - t1, s == p});
    }
    {
        CountSpec spec;
        spec.q1 = spec.q2 = 7;
        spec.h = 1;
        spec.window.A = spec.window.C = spec.window.D = 120 * std::cbrt(scale);
        spec.alpha = AlphaWeight::bc_indicator(7, 1);
        double t0 = omp_get_wtime();
        cplx s = serial::det_eq_bruteforce(spec);
        double t1 = omp_get_wtime();
        cplx p = det_eq_bruteforce(spec);
        double t2 = omp_get_wtime();
        print({"det_eq twisted q=7", t1 - t0, t2 - t1, s == p});
    }
    return 0;
}

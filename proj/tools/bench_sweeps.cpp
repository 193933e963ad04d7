// Benchmarks the OpenMP sweep kernels against their serial reference and
// checks that both paths agree.

#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "orbicluster/sweeps.hpp"

using namespace orbicluster;
using Clock = std::chrono::steady_clock;

namespace {

template <typename F>
double time_ms(F&& f) {
    auto t0 = Clock::now();
    f();
    auto t1 = Clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void row(const char* name, double serial_ms, double parallel_ms, bool agree) {
    std::printf("%-28s %10.1f ms %10.1f ms %7.2fx %s\n", name, serial_ms, parallel_ms,
                serial_ms / parallel_ms, agree ? "identical" : "MISMATCH");
}

} // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; both columns run serially\n");
#endif
    std::printf("%-28s %13s %13s %8s\n", "sweep", "serial", "parallel", "speedup");

    {
        SweepOptions s{7, 200000, 1e-9, false}, p{7, 200000, 1e-9, true};
        CcPrimeSweepResult rs, rp;
        double ts = time_ms([&] { rs = cc_prime_sweep(5, s); });
        double tp = time_ms([&] { rp = cc_prime_sweep(5, p); });
        row("cc-prime (p=5, 200k)", ts, tp, rs.max_residual == rp.max_residual && rs.ok == rp.ok);
    }
    {
        SweepOptions s{7, 20000, 1e-9, false}, p{7, 20000, 1e-9, true};
        IdentitySweepResult rs, rp;
        double ts = time_ms([&] { rs = identity_sweep(7, s); });
        double tp = time_ms([&] { rp = identity_sweep(7, p); });
        row("p-gon identities (p=7, 20k)", ts, tp, rs.max_residual == rp.max_residual);
    }
    {
        RandomSeedParams params;
        SweepOptions s{11, 60, 1e-9, false}, p{11, 60, 1e-9, true};
        LaurentSweepResult rs, rp;
        double ts = time_ms([&] { rs = laurent_sweep(60, 8, params, s); });
        double tp = time_ms([&] { rp = laurent_sweep(60, 8, params, p); });
        row("laurent sweep (60 x 8)", ts, tp,
            rs.ok == rp.ok && rs.max_terms == rp.max_terms && rs.mutations == rp.mutations);
    }
    {
        SweepOptions s{13, 400, 1e-9, false}, p{13, 400, 1e-9, true};
        HyperbolicitySweepResult rs, rp;
        double ts = time_ms([&] { rs = hyperbolicity_sweep(400, s); });
        double tp = time_ms([&] { rp = hyperbolicity_sweep(400, p); });
        row("hyperbolicity (400 words)", ts, tp, rs.min_G == rp.min_G && rs.ok == rp.ok);
    }
    return 0;
}

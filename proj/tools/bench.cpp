// Benchmark comparing the OpenMP kernels against their serial reference
// implementations. Results are checked for equality before timing is
// reported, so this doubles as a smoke test.

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "frobsplit/frobenius.hpp"
#include "frobsplit/oracles.hpp"

using namespace frobsplit;

namespace {

double ms_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

void report(const std::string& name, double serial_ms, double parallel_ms, bool equal) {
    std::cout << name << ": serial " << serial_ms << " ms, parallel " << parallel_ms
              << " ms, speedup " << (parallel_ms > 0 ? serial_ms / parallel_ms : 0.0)
              << (equal ? "" : "  [MISMATCH]") << "\n";
    if (!equal) std::exit(1);
}

}  // namespace

int main(int argc, char** argv) {
    long long scale = argc > 1 ? std::atoll(argv[1]) : 1;
    if (scale < 1) scale = 1;

#ifdef _OPENMP
    std::cout << "OpenMP enabled, max threads " << omp_get_max_threads() << "\n";
#else
    std::cout << "OpenMP disabled; both kernels run serially\n";
#endif

    {
        FormalBundle E(5);
        E.add(1, 0, 2);
        E.add(2, -3, 1);
        E.add(3, 4, 3);
        E.add(0, -7, 5);
        Window w{-300 * scale, 300 * scale};
        auto t0 = std::chrono::steady_clock::now();
        CohomologyTable serial = table_serial(E, w);
        double serial_ms = ms_since(t0);
        t0 = std::chrono::steady_clock::now();
        CohomologyTable parallel = table(E, w);
        double parallel_ms = ms_since(t0);
        report("table P^5, window width " + std::to_string(w.width()), serial_ms,
               parallel_ms, serial == parallel);
    }

    {
        int n = 3;
        long long m = 40 * scale;
        Int budget = Int(m) * m * m * m + 1;
        auto t0 = std::chrono::steady_clock::now();
        ResidueCount serial = thomsen_enumerate_serial(n, m, -5, budget);
        double serial_ms = ms_since(t0);
        t0 = std::chrono::steady_clock::now();
        ResidueCount parallel = thomsen_enumerate(n, m, -5, budget);
        double parallel_ms = ms_since(t0);
        report("thomsen_enumerate n=3 m=" + std::to_string(m), serial_ms, parallel_ms,
               serial == parallel && serial == thomsen_counts(n, m, -5));
    }

    {
        int n = 3, p = 2;
        long long k = -6;
        auto t0 = std::chrono::steady_clock::now();
        auto serial = koszul_cech_serial(n, p, k);
        double serial_ms = ms_since(t0);
        t0 = std::chrono::steady_clock::now();
        auto parallel = koszul_cech(n, p, k);
        double parallel_ms = ms_since(t0);
        report("koszul_cech n=3 p=2 k=-6", serial_ms, parallel_ms, serial == parallel);
    }

    return 0;
}

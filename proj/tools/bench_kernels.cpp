// Times the OpenMP kernels against their serial references on the matrix
// shapes the library actually produces (dense complex GEMM and the Gram
// products behind norm estimates).

#include <chrono>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "mvdyn/linalg.hpp"

using namespace mvdyn;

namespace {

Matrix random_matrix(int n, SplitMix64& rng) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = gaussian_cplx(rng);
    return m;
}

template <typename F>
double time_ms(F&& fn, int repeats) {
    auto start = std::chrono::steady_clock::now();
    for (int r = 0; r < repeats; ++r) fn();
    auto stop = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(stop - start).count() / repeats;
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP not enabled; both columns run serially\n");
#endif
    std::printf("%8s %14s %14s %9s %12s\n", "size", "serial (ms)", "parallel (ms)", "speedup", "max |diff|");

    SplitMix64 rng(2024);
    for (int size : {64, 128, 256, 384}) {
        Matrix a = random_matrix(size, rng);
        Matrix b = random_matrix(size, rng);
        int repeats = size <= 128 ? 10 : 3;

        Matrix ref, par;
        double serial_ms = time_ms([&] { ref = matmul_serial(a, b); }, repeats);
        double parallel_ms = time_ms([&] { par = matmul(a, b); }, repeats);
        double diff = max_abs(ref - par);
        std::printf("%8d %14.3f %14.3f %8.2fx %12.3e\n", size, serial_ms, parallel_ms,
                    serial_ms / parallel_ms, diff);
    }

    std::printf("\noperator_norm (Gram + eigensolve)\n");
    for (int size : {64, 128, 256}) {
        Matrix a = random_matrix(size, rng);
        double ms = time_ms([&] { (void)operator_norm(a); }, 2);
        std::printf("%8d %14.3f\n", size, ms);
    }
    return 0;
}

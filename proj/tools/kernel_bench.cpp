// Times the OpenMP kernels against the serial reference implementations and
// cross-checks their outputs. Run manually: ./kernel_bench [dim] [repeats]

#include "ontocell/kernels.hpp"
#include "ontocell/kinetic.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace ontocell;

namespace {

ComplexMatrix random_matrix(int n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    ComplexMatrix m(n);
    for (auto& z : m.a) z = cplx(dist(rng), dist(rng));
    return m;
}

template <typename F>
double time_ms(F&& f, int repeats) {
    const auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < repeats; ++i) f();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count() / repeats;
}

}  // namespace

int main(int argc, char** argv) {
    const int dim = argc > 1 ? std::atoi(argv[1]) : 384;
    const int repeats = argc > 2 ? std::atoi(argv[2]) : 3;

#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (OpenMP disabled)\n");
#endif

    std::mt19937_64 rng(12345);
    const ComplexMatrix a = random_matrix(dim, rng);
    const ComplexMatrix b = random_matrix(dim, rng);

    ComplexMatrix c_par, c_ser;
    const double t_mul_par = time_ms([&] { c_par = kern::multiply(a, b); }, repeats);
    const double t_mul_ser = time_ms([&] { c_ser = kern::ref::multiply(a, b); }, repeats);
    std::printf("multiply %4d: omp %8.2f ms | serial %8.2f ms | speedup %.2fx | max diff %.3g\n",
                dim, t_mul_par, t_mul_ser, t_mul_ser / t_mul_par, kern::max_abs_diff(c_par, c_ser));

    const int kd = dim / 6;
    const ComplexMatrix ka = random_matrix(kd, rng);
    const ComplexMatrix kb = random_matrix(6, rng);
    ComplexMatrix k_par, k_ser;
    const double t_kron_par = time_ms([&] { k_par = kern::kron(ka, kb); }, repeats);
    const double t_kron_ser = time_ms([&] { k_ser = kern::ref::kron(ka, kb); }, repeats);
    std::printf("kron %4dx6  : omp %8.2f ms | serial %8.2f ms | speedup %.2fx | max diff %.3g\n",
                kd, t_kron_par, t_kron_ser, t_kron_ser / t_kron_par,
                kern::max_abs_diff(k_par, k_ser));

    const KineticSpec spec = KineticSpec::quadratic_positive(0.5, 8.0, 192);
    std::vector<double> xg(192), yg(192);
    for (int i = 0; i < 192; ++i) { xg[i] = (i - 96) * 0.1; yg[i] = (i - 96) * 0.05; }
    ComplexMatrix kk;
    const double t_kernel = time_ms([&] { kk = beable_kernel(spec, xg, yg); }, repeats);
    std::printf("beable_kernel 192: %8.2f ms (quadrature fill)\n", t_kernel);

    const bool ok = kern::max_abs_diff(c_par, c_ser) == 0.0 && kern::max_abs_diff(k_par, k_ser) == 0.0;
    std::printf("%s\n", ok ? "kernels agree bitwise" : "MISMATCH between omp and serial kernels");
    return ok ? 0 : 1;
}

#pragma once
#include <cstddef>

namespace gravistoch::kernels {

// Data-parallel inner loops, provided as a scalar reference and SIMD variants
// selected at runtime. Every kernel fixes its floating-point evaluation order
// (element i accumulates into slot i mod 4, slots combine as
// (s0+s1)+(s2+s3), products are mul-then-add), so all variants return
// bit-identical results and outputs do not depend on the selected backend.
struct Ops {
    // x[i] = decay[i] * x[i] + add[i]
    void (*decay_add)(double* x, const double* decay, const double* add, std::size_t n);
    double (*sum)(const double* x, std::size_t n);
    double (*dot)(const double* x, const double* y, std::size_t n);
    // sum over i < n-lag of x[i] * x[i+lag]
    double (*lagged_dot)(const double* x, std::size_t n, std::size_t lag);
    // out[p] = sum of x^(p+1), p = 0..3
    void (*power_sums)(const double* x, std::size_t n, double out[4]);
    const char* name;
};

const Ops& scalar_ops();
#ifdef __x86_64__
bool avx2_available();
const Ops& avx2_ops();  // call only when compiled in and avx2_available()
#endif

// Backend chosen once per process: GRAVISTOCH_SIMD=scalar|avx2|auto (default
// auto = best supported by the CPU). An unavailable explicit request falls
// back to scalar.
const Ops& active_ops();

}  // namespace gravistoch::kernels

// AVX2 kernels. Each accumulator lane mirrors one of the reference kernels'
// four scalar slots, products use mul-then-add (no FMA), and lanes combine in
// the same (s0+s1)+(s2+s3) order, so results are bit-identical to scalar.
#ifdef __x86_64__
#include <immintrin.h>

#include "gravistoch/kernels.hpp"

namespace gravistoch::kernels {

namespace {

inline double combine_lanes(__m256d v) {
    alignas(32) double a[4];
    _mm256_store_pd(a, v);
    return (a[0] + a[1]) + (a[2] + a[3]);
}

void decay_add_avx2(double* x, const double* decay, const double* add, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d xv = _mm256_loadu_pd(x + i);
        const __m256d dv = _mm256_loadu_pd(decay + i);
        const __m256d av = _mm256_loadu_pd(add + i);
        _mm256_storeu_pd(x + i, _mm256_add_pd(_mm256_mul_pd(dv, xv), av));
    }
    for (; i < n; ++i) {
        const double t = decay[i] * x[i];
        x[i] = t + add[i];
    }
}

double sum_avx2(const double* x, std::size_t n) {
    __m256d vacc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) vacc = _mm256_add_pd(vacc, _mm256_loadu_pd(x + i));
    alignas(32) double acc[4];
    _mm256_store_pd(acc, vacc);
    for (; i < n; ++i) acc[i & 3] += x[i];
    return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

double dot_avx2(const double* x, const double* y, std::size_t n) {
    __m256d vacc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d t = _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
        vacc = _mm256_add_pd(vacc, t);
    }
    alignas(32) double acc[4];
    _mm256_store_pd(acc, vacc);
    for (; i < n; ++i) {
        const double t = x[i] * y[i];
        acc[i & 3] += t;
    }
    return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

double lagged_dot_avx2(const double* x, std::size_t n, std::size_t lag) {
    if (lag >= n) return 0.0;
    return dot_avx2(x, x + lag, n - lag);
}

void power_sums_avx2(const double* x, std::size_t n, double out[4]) {
    __m256d s1 = _mm256_setzero_pd();
    __m256d s2 = _mm256_setzero_pd();
    __m256d s3 = _mm256_setzero_pd();
    __m256d s4 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d v = _mm256_loadu_pd(x + i);
        const __m256d v2 = _mm256_mul_pd(v, v);
        const __m256d v3 = _mm256_mul_pd(v2, v);
        const __m256d v4 = _mm256_mul_pd(v2, v2);
        s1 = _mm256_add_pd(s1, v);
        s2 = _mm256_add_pd(s2, v2);
        s3 = _mm256_add_pd(s3, v3);
        s4 = _mm256_add_pd(s4, v4);
    }
    alignas(32) double a1[4], a2[4], a3[4], a4[4];
    _mm256_store_pd(a1, s1);
    _mm256_store_pd(a2, s2);
    _mm256_store_pd(a3, s3);
    _mm256_store_pd(a4, s4);
    for (; i < n; ++i) {
        const double v = x[i];
        const double v2 = v * v;
        const double v3 = v2 * v;
        const double v4 = v2 * v2;
        a1[i & 3] += v;
        a2[i & 3] += v2;
        a3[i & 3] += v3;
        a4[i & 3] += v4;
    }
    out[0] = (a1[0] + a1[1]) + (a1[2] + a1[3]);
    out[1] = (a2[0] + a2[1]) + (a2[2] + a2[3]);
    out[2] = (a3[0] + a3[1]) + (a3[2] + a3[3]);
    out[3] = (a4[0] + a4[1]) + (a4[2] + a4[3]);
}

}  // namespace

const Ops& avx2_ops() {
    static const Ops ops{decay_add_avx2, sum_avx2, dot_avx2, lagged_dot_avx2, power_sums_avx2,
                         "avx2"};
    return ops;
}

}  // namespace gravistoch::kernels
#endif  // __x86_64__

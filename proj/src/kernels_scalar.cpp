// Reference kernels. Compiled with -ffp-contract=off: the mul/add sequence
// written here is the contract the SIMD variants reproduce bit-for-bit.
#include "gravistoch/kernels.hpp"

namespace gravistoch::kernels {

namespace {

void decay_add_scalar(double* x, const double* decay, const double* add, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double t = decay[i] * x[i];
        x[i] = t + add[i];
    }
}

inline double combine4(const double acc[4]) { return (acc[0] + acc[1]) + (acc[2] + acc[3]); }

double sum_scalar(const double* x, std::size_t n) {
    double acc[4] = {0.0, 0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) acc[i & 3] += x[i];
    return combine4(acc);
}

double dot_scalar(const double* x, const double* y, std::size_t n) {
    double acc[4] = {0.0, 0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) {
        const double t = x[i] * y[i];
        acc[i & 3] += t;
    }
    return combine4(acc);
}

double lagged_dot_scalar(const double* x, std::size_t n, std::size_t lag) {
    if (lag >= n) return 0.0;
    return dot_scalar(x, x + lag, n - lag);
}

void power_sums_scalar(const double* x, std::size_t n, double out[4]) {
    double a1[4] = {}, a2[4] = {}, a3[4] = {}, a4[4] = {};
    for (std::size_t i = 0; i < n; ++i) {
        const double v = x[i];
        const double v2 = v * v;
        const double v3 = v2 * v;
        const double v4 = v2 * v2;
        a1[i & 3] += v;
        a2[i & 3] += v2;
        a3[i & 3] += v3;
        a4[i & 3] += v4;
    }
    out[0] = combine4(a1);
    out[1] = combine4(a2);
    out[2] = combine4(a3);
    out[3] = combine4(a4);
}

}  // namespace

const Ops& scalar_ops() {
    static const Ops ops{decay_add_scalar, sum_scalar, dot_scalar, lagged_dot_scalar,
                         power_sums_scalar, "scalar"};
    return ops;
}

}  // namespace gravistoch::kernels

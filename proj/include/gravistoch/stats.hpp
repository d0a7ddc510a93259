#pragma once
#include <cstddef>
#include <span>
#include <vector>

namespace gravistoch::stats {

struct MeanSE {
    double mean = 0.0;
    double se = 0.0;
    std::size_t n = 0;
};

MeanSE mean_se(std::span<const double> xs);

// Mean of xs with a batch-means standard error: xs is split into n_batches
// contiguous batches and the spread of batch means estimates the error of the
// overall mean. Throws guard_error when n_batches < 10 or xs is too short.
MeanSE batch_means(std::span<const double> xs, std::size_t n_batches);

// Delete-one-block jackknife of the mean.
MeanSE jackknife_blocks(std::span<const double> xs, std::size_t n_blocks);

struct Kurtosis {
    double excess = 0.0;  // m4/m2^2 - 3
    double se = 0.0;      // block-jackknife standard error
    std::size_t n = 0;
};

// Excess kurtosis with a delete-one-block jackknife SE (valid for
// non-Gaussian data, unlike the sqrt(24/n) formula).
Kurtosis excess_kurtosis(std::span<const double> xs, std::size_t n_blocks = 100);

struct LineFit {
    double slope = 0.0;
    double slope_se = 0.0;
    double intercept = 0.0;
    double intercept_se = 0.0;
    std::size_t points = 0;
};

// Weighted least squares of y = intercept + slope * x, weights 1/se^2;
// parameter errors from the WLS covariance assuming the given se are exact.
LineFit weighted_line_fit(std::span<const double> x, std::span<const double> y,
                          std::span<const double> se);

// Two-sided Kolmogorov-Smirnov distance of sorted-in-place samples against
// the uniform law on [0, 1), plus the asymptotic critical value at 1%.
struct KsResult {
    double distance = 0.0;
    double critical_1pct = 0.0;
};
KsResult ks_uniform(std::vector<double> samples);

}  // namespace gravistoch::stats

#pragma once
#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace gravistoch::moments {

// (observable id, time) label for one field insertion.
struct MomentLabel {
    int observable = 0;
    double time = 0.0;
};

// Estimated (or analytic) second moments over a label set, the carrier for
// covariance comparisons and Wick predictions.
struct CovarianceEstimate {
    std::vector<MomentLabel> labels;
    std::vector<double> matrix;     // row-major labels.size()^2
    std::vector<double> se;         // same shape; zeros for analytic tables
    std::vector<double> reference;  // optional analytic values, empty or same shape

    std::size_t size() const { return labels.size(); }
    double at(std::size_t i, std::size_t j) const { return matrix[i * size() + j]; }
    double se_at(std::size_t i, std::size_t j) const { return se[i * size() + j]; }
    double reference_at(std::size_t i, std::size_t j) const { return reference[i * size() + j]; }

    // symmetry, nonnegative diagonal and errors; throws on violation
    void validate() const;
};

using Matching = std::vector<std::pair<int, int>>;

// All perfect matchings of {0, ..., n-1} in deterministic order; (n-1)!! of
// them for even n. n = 0 yields one empty matching, odd n yields none.
// Throws for n > 12 (factorial growth).
std::vector<Matching> pairings(int n);

struct WickResult {
    double value = 0.0;
    bool odd = false;  // odd-order moment of a zero-mean Gaussian; value is 0
};

// Gaussian moment of the labeled product: sum over pairings of products of
// covariance entries.
WickResult wick_moment(const CovarianceEstimate& cov, const std::vector<int>& indices);

// Row-major sample table: one row per (correlated) sample, one column per
// label.
struct SampleTable {
    std::vector<double> data;
    std::size_t n_rows = 0;
    std::size_t n_cols = 0;
    double at(std::size_t r, std::size_t c) const { return data[r * n_cols + c]; }
};

struct MomentEstimate {
    double value = 0.0;
    double se = 0.0;
    std::size_t samples = 0;
};

// Empirical product moment over the rows with a delete-one-block jackknife
// standard error; blocks follow row order, so callers group correlated rows
// (e.g. one block per trajectory). Requires >= 1000 rows.
MomentEstimate sample_moment(const SampleTable& table, std::size_t n_blocks);

// Average of the products obtained under every argument ordering. For
// commuting numeric inputs this is the plain mean; it averages away ordering
// conventions in propagator tables.
std::complex<double> symmetrize(const std::vector<std::complex<double>>& products);

}  // namespace gravistoch::moments

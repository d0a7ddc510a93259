#include "gravistoch/moments.hpp"

#include <cmath>
#include <string>

#include "gravistoch/errors.hpp"
#include "gravistoch/stats.hpp"

namespace gravistoch::moments {

void CovarianceEstimate::validate() const {
    const std::size_t n = size();
    if (matrix.size() != n * n || se.size() != n * n)
        throw config_error("covariance estimate: matrix/se shape mismatch");
    if (!reference.empty() && reference.size() != n * n)
        throw config_error("covariance estimate: reference shape mismatch");
    for (std::size_t i = 0; i < n; ++i) {
        if (at(i, i) < 0.0) throw config_error("covariance estimate: negative diagonal");
        for (std::size_t j = 0; j < n; ++j) {
            if (se_at(i, j) < 0.0) throw config_error("covariance estimate: negative stderr");
            if (at(i, j) != at(j, i)) throw config_error("covariance estimate: not symmetric");
        }
    }
}

namespace {

void enumerate_pairings(std::vector<int>& free, Matching& current, std::vector<Matching>& out) {
    if (free.empty()) {
        out.push_back(current);
        return;
    }
    // pair the lowest free index with each later one, in order
    const int first = free.front();
    for (std::size_t i = 1; i < free.size(); ++i) {
        const int partner = free[i];
        std::vector<int> rest;
        rest.reserve(free.size() - 2);
        for (std::size_t j = 1; j < free.size(); ++j)
            if (j != i) rest.push_back(free[j]);
        current.emplace_back(first, partner);
        enumerate_pairings(rest, current, out);
        current.pop_back();
    }
}

}  // namespace

std::vector<Matching> pairings(int n) {
    if (n < 0) throw config_error("pairings: negative order");
    if (n > 12) throw config_error("pairings: order capped at 12 (got " + std::to_string(n) + ")");
    if (n % 2 != 0) return {};  // no perfect matching of an odd set
    std::vector<int> free(n);
    for (int i = 0; i < n; ++i) free[i] = i;
    std::vector<Matching> out;
    Matching current;
    enumerate_pairings(free, current, out);
    return out;
}

WickResult wick_moment(const CovarianceEstimate& cov, const std::vector<int>& indices) {
    for (int idx : indices)
        if (idx < 0 || static_cast<std::size_t>(idx) >= cov.size())
            throw config_error("wick moment: label index out of range");
    if (indices.size() % 2 != 0) return {0.0, true};

    WickResult r;
    for (const Matching& m : pairings(static_cast<int>(indices.size()))) {
        double term = 1.0;
        for (const auto& [a, b] : m) term *= cov.at(indices[a], indices[b]);
        r.value += term;
    }
    return r;
}

MomentEstimate sample_moment(const SampleTable& table, std::size_t n_blocks) {
    if (table.n_rows < 1000)
        throw guard_error("sample moment: need at least 1000 samples (got " +
                          std::to_string(table.n_rows) + ")");
    if (table.data.size() != table.n_rows * table.n_cols)
        throw config_error("sample moment: table shape mismatch");
    std::vector<double> products(table.n_rows);
    for (std::size_t r = 0; r < table.n_rows; ++r) {
        double p = 1.0;
        for (std::size_t c = 0; c < table.n_cols; ++c) p *= table.at(r, c);
        products[r] = p;
    }
    const auto ms = stats::jackknife_blocks(products, n_blocks);
    return {ms.mean, ms.se, table.n_rows};
}

std::complex<double> symmetrize(const std::vector<std::complex<double>>& products) {
    if (products.empty()) return {0.0, 0.0};
    std::complex<double> s{0.0, 0.0};
    for (const auto& p : products) s += p;
    return s / static_cast<double>(products.size());
}

}  // namespace gravistoch::moments

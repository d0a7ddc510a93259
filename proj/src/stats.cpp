#include "gravistoch/stats.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "gravistoch/errors.hpp"
#include "gravistoch/kernels.hpp"

namespace gravistoch::stats {

MeanSE mean_se(std::span<const double> xs) {
    MeanSE r;
    r.n = xs.size();
    if (r.n == 0) return r;
    const auto& ops = kernels::active_ops();
    r.mean = ops.sum(xs.data(), xs.size()) / static_cast<double>(r.n);
    if (r.n < 2) return r;
    double ss = 0.0;
    for (double x : xs) ss += (x - r.mean) * (x - r.mean);
    r.se = std::sqrt(ss / (static_cast<double>(r.n) * (static_cast<double>(r.n) - 1.0)));
    return r;
}

MeanSE batch_means(std::span<const double> xs, std::size_t n_batches) {
    if (n_batches < 10)
        throw guard_error("batch means: need at least 10 batches (got " +
                          std::to_string(n_batches) + ")");
    if (xs.size() < n_batches)
        throw guard_error("batch means: " + std::to_string(xs.size()) + " values cannot fill " +
                          std::to_string(n_batches) + " batches");
    const auto& ops = kernels::active_ops();
    const std::size_t base = xs.size() / n_batches;
    const std::size_t extra = xs.size() % n_batches;
    std::vector<double> means;
    means.reserve(n_batches);
    std::size_t pos = 0;
    for (std::size_t b = 0; b < n_batches; ++b) {
        const std::size_t len = base + (b < extra ? 1 : 0);
        means.push_back(ops.sum(xs.data() + pos, len) / static_cast<double>(len));
        pos += len;
    }
    MeanSE r = mean_se(means);
    r.n = xs.size();
    return r;
}

MeanSE jackknife_blocks(std::span<const double> xs, std::size_t n_blocks) {
    if (n_blocks < 2 || xs.size() < n_blocks)
        throw guard_error("jackknife: need at least 2 blocks covered by the data");
    const auto& ops = kernels::active_ops();
    const std::size_t base = xs.size() / n_blocks;
    const std::size_t extra = xs.size() % n_blocks;
    std::vector<double> block_sum(n_blocks);
    std::vector<std::size_t> block_len(n_blocks);
    std::size_t pos = 0;
    double total = 0.0;
    for (std::size_t b = 0; b < n_blocks; ++b) {
        block_len[b] = base + (b < extra ? 1 : 0);
        block_sum[b] = ops.sum(xs.data() + pos, block_len[b]);
        total += block_sum[b];
        pos += block_len[b];
    }
    MeanSE r;
    r.n = xs.size();
    r.mean = total / static_cast<double>(xs.size());
    std::vector<double> loo(n_blocks);
    for (std::size_t b = 0; b < n_blocks; ++b)
        loo[b] = (total - block_sum[b]) / static_cast<double>(xs.size() - block_len[b]);
    double loo_mean = 0.0;
    for (double v : loo) loo_mean += v;
    loo_mean /= static_cast<double>(n_blocks);
    double ss = 0.0;
    for (double v : loo) ss += (v - loo_mean) * (v - loo_mean);
    r.se = std::sqrt(ss * (static_cast<double>(n_blocks) - 1.0) / static_cast<double>(n_blocks));
    return r;
}

Kurtosis excess_kurtosis(std::span<const double> xs, std::size_t n_blocks) {
    if (xs.size() < 4 * n_blocks)
        throw guard_error("kurtosis: too few samples for " + std::to_string(n_blocks) + " blocks");
    const auto& ops = kernels::active_ops();
    const std::size_t base = xs.size() / n_blocks;
    const std::size_t extra = xs.size() % n_blocks;

    // Raw power sums per block; leave-one-out estimates recombine them.
    std::vector<std::array<double, 4>> sums(n_blocks);
    std::vector<std::size_t> lens(n_blocks);
    std::array<double, 4> total{0, 0, 0, 0};
    std::size_t pos = 0;
    for (std::size_t b = 0; b < n_blocks; ++b) {
        lens[b] = base + (b < extra ? 1 : 0);
        double s[4];
        ops.power_sums(xs.data() + pos, lens[b], s);
        for (int p = 0; p < 4; ++p) {
            sums[b][p] = s[p];
            total[p] += s[p];
        }
        pos += lens[b];
    }

    auto excess_from = [](const std::array<double, 4>& s, double n) {
        const double mu = s[0] / n;
        const double m2 = s[1] / n - mu * mu;
        const double m4 =
            s[2 + 1] / n - 4.0 * mu * s[2] / n + 6.0 * mu * mu * s[1] / n - 3.0 * mu * mu * mu * mu;
        return m4 / (m2 * m2) - 3.0;
    };

    Kurtosis k;
    k.n = xs.size();
    k.excess = excess_from(total, static_cast<double>(xs.size()));

    std::vector<double> loo(n_blocks);
    for (std::size_t b = 0; b < n_blocks; ++b) {
        std::array<double, 4> rest;
        for (int p = 0; p < 4; ++p) rest[p] = total[p] - sums[b][p];
        loo[b] = excess_from(rest, static_cast<double>(xs.size() - lens[b]));
    }
    double loo_mean = 0.0;
    for (double v : loo) loo_mean += v;
    loo_mean /= static_cast<double>(n_blocks);
    double ss = 0.0;
    for (double v : loo) ss += (v - loo_mean) * (v - loo_mean);
    k.se = std::sqrt(ss * (static_cast<double>(n_blocks) - 1.0) / static_cast<double>(n_blocks));
    return k;
}

LineFit weighted_line_fit(std::span<const double> x, std::span<const double> y,
                          std::span<const double> se) {
    if (x.size() != y.size() || x.size() != se.size())
        throw guard_error("line fit: mismatched input lengths");
    double sw = 0, swx = 0, swy = 0, swxx = 0, swxy = 0;
    std::size_t used = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(se[i] > 0.0) || !std::isfinite(y[i])) continue;
        const double w = 1.0 / (se[i] * se[i]);
        sw += w;
        swx += w * x[i];
        swy += w * y[i];
        swxx += w * x[i] * x[i];
        swxy += w * x[i] * y[i];
        ++used;
    }
    if (used < 2) throw guard_error("line fit: need at least 2 usable points");
    const double denom = sw * swxx - swx * swx;
    LineFit f;
    f.points = used;
    f.slope = (sw * swxy - swx * swy) / denom;
    f.intercept = (swxx * swy - swx * swxy) / denom;
    f.slope_se = std::sqrt(sw / denom);
    f.intercept_se = std::sqrt(swxx / denom);
    return f;
}

KsResult ks_uniform(std::vector<double> samples) {
    if (samples.empty()) throw guard_error("ks test: empty sample");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = samples[i];  // uniform CDF
        d = std::max(d, std::max(std::abs((i + 1.0) / n - f), std::abs(f - i / n)));
    }
    return {d, 1.6276 / std::sqrt(n)};
}

}  // namespace gravistoch::stats

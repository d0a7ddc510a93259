#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "gravistoch/errors.hpp"
#include "gravistoch/moments.hpp"

using namespace gravistoch;
using namespace gravistoch::moments;

namespace {

CovarianceEstimate make_cov(const std::vector<std::vector<double>>& m) {
    CovarianceEstimate cov;
    const std::size_t n = m.size();
    cov.labels.resize(n);
    for (std::size_t i = 0; i < n; ++i) cov.labels[i] = {static_cast<int>(i), 0.0};
    cov.matrix.resize(n * n);
    cov.se.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) cov.matrix[i * n + j] = m[i][j];
    cov.validate();
    return cov;
}

}  // namespace

TEST_CASE("perfect matching counts") {
    CHECK(pairings(0).size() == 1);  // one empty matching
    CHECK(pairings(0).front().empty());
    CHECK(pairings(1).empty());  // odd: none, distinct from the n = 0 case
    CHECK(pairings(3).empty());
    CHECK(pairings(2).size() == 1);
    CHECK(pairings(4).size() == 3);
    CHECK(pairings(6).size() == 15);
    CHECK(pairings(8).size() == 105);
    CHECK(pairings(10).size() == 945);
    CHECK(pairings(12).size() == 10395);
    CHECK_THROWS_AS(pairings(14), config_error);
    CHECK_THROWS_AS(pairings(-2), config_error);

    // deterministic order: lowest index always pairs first
    const auto m4 = pairings(4);
    CHECK(m4[0] == Matching{{0, 1}, {2, 3}});
    CHECK(m4[1] == Matching{{0, 2}, {1, 3}});
    CHECK(m4[2] == Matching{{0, 3}, {1, 2}});
}

TEST_CASE("wick moments") {
    const double s2 = 1.7;  // variance
    const auto cov1 = make_cov({{s2}});
    CHECK(wick_moment(cov1, {0, 0, 0, 0}).value == doctest::Approx(3.0 * s2 * s2).epsilon(1e-14));

    // two observables with cross covariance
    const double sa = 2.0, sb = 0.5, cab = 0.3;
    const auto cov2 = make_cov({{sa, cab}, {cab, sb}});
    CHECK(wick_moment(cov2, {0, 0, 1, 1}).value ==
          doctest::Approx(sa * sb + 2.0 * cab * cab).epsilon(1e-14));

    const auto odd = wick_moment(cov2, {0, 1, 0});
    CHECK(odd.odd);
    CHECK(odd.value == 0.0);

    CHECK_THROWS_AS(wick_moment(cov2, {0, 5}), config_error);
}

TEST_CASE("wick moment is permutation invariant") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.1, 2.0);
    // random symmetric matrix with positive diagonal
    std::vector<std::vector<double>> m(3, std::vector<double>(3));
    for (int i = 0; i < 3; ++i) {
        m[i][i] = u(rng) + 1.0;
        for (int j = 0; j < i; ++j) m[i][j] = m[j][i] = u(rng) - 1.0;
    }
    const auto cov = make_cov(m);
    std::vector<int> idx{0, 1, 2, 2, 1, 0};
    const double base = wick_moment(cov, idx).value;
    for (int trial = 0; trial < 50; ++trial) {
        std::shuffle(idx.begin(), idx.end(), rng);
        CHECK(wick_moment(cov, idx).value == doctest::Approx(base).epsilon(1e-12));
    }
}

TEST_CASE("sample moment with jackknife error") {
    std::mt19937_64 rng(99);
    const double sigma = 1.3;
    std::normal_distribution<double> gauss(0.0, sigma);
    SampleTable table;
    table.n_rows = 20000;
    table.n_cols = 4;
    table.data.resize(table.n_rows * table.n_cols);
    for (std::size_t r = 0; r < table.n_rows; ++r) {
        const double x = gauss(rng);  // identical labels: fourth moment of x
        for (std::size_t c = 0; c < 4; ++c) table.data[r * 4 + c] = x;
    }
    const auto est = sample_moment(table, 100);
    const double expected = 3.0 * sigma * sigma * sigma * sigma;
    CHECK(std::abs(est.value - expected) < 3.0 * est.se);
    CHECK(est.se > 0.0);
    CHECK(est.samples == table.n_rows);

    SampleTable tiny;
    tiny.n_rows = 10;
    tiny.n_cols = 1;
    tiny.data.assign(10, 1.0);
    CHECK_THROWS_AS(sample_moment(tiny, 2), guard_error);
}

TEST_CASE("symmetrize") {
    using cd = std::complex<double>;
    // commuting numeric case: unchanged
    CHECK(symmetrize({cd{2.5, 0.0}, cd{2.5, 0.0}}) == cd{2.5, 0.0});
    CHECK(symmetrize({cd{4.0, 1.0}}) == cd{4.0, 1.0});

    // averaging the two time orderings of a phase kernel gives the cosine
    const double omega = 1.3, tau = 0.7;
    const cd fwd = std::exp(cd(0.0, -omega * tau));
    const cd bwd = std::exp(cd(0.0, omega * tau));
    const cd sym = symmetrize({fwd, bwd});
    CHECK(sym.real() == doctest::Approx(std::cos(omega * tau)).epsilon(1e-14));
    CHECK(std::abs(sym.imag()) < 1e-15);
}

TEST_CASE("covariance estimate validation") {
    auto cov = make_cov({{1.0, 0.2}, {0.2, 1.0}});
    CHECK_NOTHROW(cov.validate());

    auto bad = cov;
    bad.matrix[1] = 0.3;  // break symmetry
    CHECK_THROWS_AS(bad.validate(), config_error);

    auto neg = cov;
    neg.matrix[0] = -1.0;
    CHECK_THROWS_AS(neg.validate(), config_error);

    auto badse = cov;
    badse.se[2] = -0.1;
    CHECK_THROWS_AS(badse.validate(), config_error);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "gravistoch/kernels.hpp"
#include "gravistoch/rng.hpp"
#include "gravistoch/stats.hpp"

using namespace gravistoch;

TEST_CASE("philox known-answer vectors") {
    // published test vectors for the 10-round 4x32 configuration
    const auto zero = rng::philox4x32({0, 0, 0, 0}, {0, 0});
    CHECK(zero == std::array<std::uint32_t, 4>{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});

    const auto ones = rng::philox4x32({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                                      {0xffffffffu, 0xffffffffu});
    CHECK(ones == std::array<std::uint32_t, 4>{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});

    const auto pi_digits = rng::philox4x32({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                                           {0xa4093822u, 0x299f31d0u});
    CHECK(pi_digits ==
          std::array<std::uint32_t, 4>{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("counter streams are deterministic and member-separated") {
    const rng::CounterStream a(42, 7);
    const rng::CounterStream b(42, 7);
    const rng::CounterStream other(42, 8);

    CHECK(a.uniform2(rng::Domain::noise, 3, 1) == b.uniform2(rng::Domain::noise, 3, 1));
    CHECK(a.normal2(rng::Domain::init, 0, 0) == b.normal2(rng::Domain::init, 0, 0));
    CHECK(a.uniform2(rng::Domain::noise, 3, 1) != other.uniform2(rng::Domain::noise, 3, 1));
    // domains are disjoint counter subspaces
    CHECK(a.uniform2(rng::Domain::noise, 3, 1) != a.uniform2(rng::Domain::phase, 3, 1));
}

TEST_CASE("uniform draws pass a ks test") {
    const rng::CounterStream s(2024, 0);
    std::vector<double> u;
    u.reserve(200000);
    for (std::uint64_t i = 0; i < 100000; ++i) {
        const auto pair = s.uniform2(rng::Domain::phase, i, 0);
        u.push_back(pair[0]);
        u.push_back(pair[1]);
        CHECK(pair[0] >= 0.0);
        CHECK(pair[0] < 1.0);
    }
    const auto ks = stats::ks_uniform(std::move(u));
    CHECK(ks.distance < ks.critical_1pct);
}

TEST_CASE("normal draws have gaussian moments") {
    const rng::CounterStream s(99, 1);
    const std::size_t n_pairs = 50000;
    std::vector<double> z;
    z.reserve(2 * n_pairs);
    for (std::uint64_t i = 0; i < n_pairs; ++i) {
        const auto pair = s.normal2(rng::Domain::noise, i, 3);
        z.push_back(pair[0]);
        z.push_back(pair[1]);
    }
    const double n = static_cast<double>(z.size());
    double mean = 0.0;
    for (double v : z) mean += v;
    mean /= n;
    CHECK(std::abs(mean) < 3.0 / std::sqrt(n));

    double var = 0.0;
    for (double v : z) var += (v - mean) * (v - mean);
    var /= n - 1.0;
    CHECK(std::abs(var - 1.0) < 3.0 * std::sqrt(2.0 / n));

    const auto kurt = stats::excess_kurtosis(z, 100);
    CHECK(std::abs(kurt.excess) < 3.0 * kurt.se);
}

namespace {

std::vector<double> random_array(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::vector<double> v(n);
    for (auto& x : v) x = u(rng);
    return v;
}

void check_backend_equivalence(const kernels::Ops& a, const kernels::Ops& b) {
    std::mt19937_64 rng(7);
    for (const std::size_t n : {std::size_t{0}, std::size_t{1}, std::size_t{3}, std::size_t{4},
                                std::size_t{5}, std::size_t{17}, std::size_t{1027}}) {
        const auto x = random_array(rng, n);
        const auto y = random_array(rng, n);
        const auto d = random_array(rng, n);

        // bitwise identical results, not merely close
        CHECK(a.sum(x.data(), n) == b.sum(x.data(), n));
        CHECK(a.dot(x.data(), y.data(), n) == b.dot(x.data(), y.data(), n));
        for (const std::size_t lag : {std::size_t{0}, std::size_t{1}, std::size_t{5}})
            CHECK(a.lagged_dot(x.data(), n, lag) == b.lagged_dot(x.data(), n, lag));

        double pa[4], pb[4];
        a.power_sums(x.data(), n, pa);
        b.power_sums(x.data(), n, pb);
        for (int p = 0; p < 4; ++p) CHECK(pa[p] == pb[p]);

        auto xa = x, xb = x;
        a.decay_add(xa.data(), d.data(), y.data(), n);
        b.decay_add(xb.data(), d.data(), y.data(), n);
        CHECK(xa == xb);
    }
}

}  // namespace

TEST_CASE("scalar kernels match naive references") {
    std::mt19937_64 rng(11);
    const auto& ops = kernels::scalar_ops();
    const auto x = random_array(rng, 501);
    const auto y = random_array(rng, 501);

    long double naive_sum = 0.0L, naive_dot = 0.0L;
    for (std::size_t i = 0; i < x.size(); ++i) {
        naive_sum += x[i];
        naive_dot += static_cast<long double>(x[i]) * y[i];
    }
    CHECK(ops.sum(x.data(), x.size()) ==
          doctest::Approx(static_cast<double>(naive_sum)).epsilon(1e-13));
    CHECK(ops.dot(x.data(), y.data(), x.size()) ==
          doctest::Approx(static_cast<double>(naive_dot)).epsilon(1e-13));

    const std::size_t lag = 37;
    long double naive_lag = 0.0L;
    for (std::size_t i = 0; i + lag < x.size(); ++i)
        naive_lag += static_cast<long double>(x[i]) * x[i + lag];
    CHECK(ops.lagged_dot(x.data(), x.size(), lag) ==
          doctest::Approx(static_cast<double>(naive_lag)).epsilon(1e-13));
    CHECK(ops.lagged_dot(x.data(), x.size(), x.size()) == 0.0);
    CHECK(ops.lagged_dot(x.data(), x.size(), x.size() + 10) == 0.0);

    double p[4];
    ops.power_sums(x.data(), x.size(), p);
    long double s1 = 0, s2 = 0, s3 = 0, s4 = 0;
    for (double v : x) {
        s1 += v;
        s2 += static_cast<long double>(v) * v;
        s3 += static_cast<long double>(v) * v * v;
        s4 += static_cast<long double>(v) * v * v * v;
    }
    CHECK(p[0] == doctest::Approx(static_cast<double>(s1)).epsilon(1e-13));
    CHECK(p[1] == doctest::Approx(static_cast<double>(s2)).epsilon(1e-13));
    CHECK(p[2] == doctest::Approx(static_cast<double>(s3)).epsilon(1e-13));
    CHECK(p[3] == doctest::Approx(static_cast<double>(s4)).epsilon(1e-13));

    // elementwise update semantics, exact
    auto xc = x;
    ops.decay_add(xc.data(), y.data(), x.data(), x.size());
    for (std::size_t i = 0; i < x.size(); ++i) CHECK(xc[i] == y[i] * x[i] + x[i]);
}

#ifdef __x86_64__
TEST_CASE("avx2 kernels are bit-identical to scalar") {
    if (!kernels::avx2_available()) {
        MESSAGE("avx2 not available on this host; skipping");
        return;
    }
    check_backend_equivalence(kernels::scalar_ops(), kernels::avx2_ops());
}
#endif

TEST_CASE("active backend is one of the registered ones") {
    const auto& ops = kernels::active_ops();
    const std::string name = ops.name;
    CHECK((name == "scalar" || name == "avx2"));
    // repeated calls return the same table
    CHECK(&kernels::active_ops() == &ops);
}

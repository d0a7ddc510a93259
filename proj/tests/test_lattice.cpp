#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>
#include <set>

#include "doctest.h"
#include "gravistoch/errors.hpp"
#include "gravistoch/lattice.hpp"
#include "test_util.hpp"

using namespace gravistoch;
using namespace gravistoch::lattice;

TEST_CASE("mode enumeration counts") {
    const auto g1 = enumerate_modes(2.0 * kPi, 1);
    CHECK(g1.kpoint_pairs() == 13);  // (3^3 - 1) / 2
    CHECK(g1.size() == 26);

    const auto g2 = enumerate_modes(2.0 * kPi, 2);
    CHECK(g2.kpoint_pairs() == 62);  // (5^3 - 1) / 2
    CHECK(g2.size() == 124);

    CHECK_THROWS_AS(enumerate_modes(2.0 * kPi, 0), config_error);
    CHECK_THROWS_AS(enumerate_modes(0.0, 1), config_error);
    CHECK_THROWS_AS(enumerate_modes(-1.0, 3), config_error);
}

TEST_CASE("representatives form a transversal of the k -> -k pairing") {
    const auto grid = enumerate_modes(2.0 * kPi, 2);
    std::set<std::array<int, 3>> reps;
    for (const auto& e : grid.entries()) reps.insert(e.n);
    CHECK(reps.size() == grid.kpoint_pairs());
    for (const auto& n : reps) {
        const std::array<int, 3> neg{-n[0], -n[1], -n[2]};
        CHECK(reps.count(neg) == 0);  // partner is never stored
        CHECK(n != std::array<int, 3>{0, 0, 0});
    }
    // deterministic ordering: lexicographic in n, polarizations adjacent
    for (std::size_t i = 0; i + 1 < grid.size(); i += 2) {
        CHECK(grid.entry(i).n == grid.entry(i + 1).n);
        CHECK(grid.entry(i).pol == Pol::plus);
        CHECK(grid.entry(i + 1).pol == Pol::cross);
    }
    // first representative in lexicographic order is n = (0, 0, 1)
    CHECK(grid.entry(0).n == std::array<int, 3>{0, 0, 1});
}

TEST_CASE("field assembly") {
    const double L = 2.0 * kPi;
    const auto grid = enumerate_modes(L, 1);

    ModeState zero;
    zero.q.assign(grid.size(), {0.0, 0.0});
    const auto f0 = assemble_field(grid, zero, {0.3, -1.0, 2.0});
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(f0.h[i][j] == 0.0);

    // single stored mode with a real amplitude: the pair adds coherently at
    // the origin, doubling the stored amplitude
    ModeState single = zero;
    const double q = 0.8;
    single.q[0] = {q, 0.0};  // entry 0: n = (0,0,1), plus polarization
    const auto f1 = assemble_field(grid, single, {0.0, 0.0, 0.0});
    const double expected = 2.0 * q / (std::sqrt(2.0) * L * std::sqrt(L));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(f1.h[i][j] ==
                  doctest::Approx(expected * grid.entry(0).eps[i][j]).epsilon(1e-14).scale(1.0));

    // random amplitudes: real, symmetric, traceless at random points
    auto rng = testutil::engine(17);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    ModeState random_state;
    random_state.q.resize(grid.size());
    for (auto& amp : random_state.q) amp = {u(rng), u(rng)};
    for (int trial = 0; trial < 100; ++trial) {
        const Vec3 x{3.0 * u(rng), 3.0 * u(rng), 3.0 * u(rng)};
        const auto f = assemble_field(grid, random_state, x);
        CHECK(f.imag_residual < 1e-12);
        CHECK(std::abs(trace(f.h)) < 1e-12);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < i; ++j) CHECK(f.h[i][j] == f.h[j][i]);
    }

    // linearity in the amplitudes
    ModeState scaled_state = random_state;
    for (auto& amp : scaled_state.q) amp *= 2.5;
    const Vec3 x{0.4, 0.7, -0.2};
    const auto fa = assemble_field(grid, random_state, x);
    const auto fb = assemble_field(grid, scaled_state, x);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(fb.h[i][j] == doctest::Approx(2.5 * fa.h[i][j]).epsilon(1e-12).scale(1e-12));

    ModeState mismatched;
    mismatched.q.assign(grid.size() + 2, {0.0, 0.0});
    CHECK_THROWS_AS(assemble_field(grid, mismatched, x), config_error);
}

TEST_CASE("cumulative mode count approaches the continuum density") {
    const double L = 2.0 * kPi;
    const auto grid = enumerate_modes(L, 24);
    const double K = 24.0 * 2.0 * kPi / L;  // inscribed sphere radius
    std::size_t count = 0;
    for (const auto& e : grid.entries())
        if (e.omega <= K) count += 2;  // entry plus partner
    const double expected = std::pow(L, 3) * std::pow(K, 3) / (3.0 * kPi * kPi);
    CHECK(std::abs(static_cast<double>(count) - expected) / expected < 0.03);
}

TEST_CASE("vacuum spectrum binning against a hand count") {
    const double L = 2.0 * kPi;
    const auto grid = enumerate_modes(L, 1);
    const auto c = PhysicalConstants::natural();
    // bin 2 of width 0.4 covers [0.8, 1.2): exactly the unit-frequency modes,
    // i.e. the 6 shortest wavevectors with both polarizations
    const auto res = vacuum_spectrum(grid, c, 0.4, /*require_fit=*/false);
    REQUIRE(res.bins.size() > 3);
    const auto& bin = res.bins[2];
    CHECK(bin.count == 12);
    const double direct = 12.0 * (1.0 * 0.5) / (std::pow(L, 3) * 0.4);
    CHECK(bin.rho == doctest::Approx(direct).epsilon(1e-14));
    CHECK(!res.fitted);

    // insufficient modes for a fit
    CHECK_THROWS_AS(vacuum_spectrum(grid, c, 0.4, /*require_fit=*/true), guard_error);
}

TEST_CASE("vacuum spectrum power law at n_max 24") {
    const double L = 2.0 * kPi;
    const auto grid = enumerate_modes(L, 24);
    const auto c = PhysicalConstants::natural();
    const auto res = vacuum_spectrum(grid, c, 1.0);
    REQUIRE(res.fitted);
    CHECK(res.fit_bins >= 10);
    CHECK(std::abs(res.fit_exponent - 3.0) <= 0.05);
    CHECK(std::abs(res.fit_coefficient / res.reference_coefficient - 1.0) <= 0.05);
    CHECK(res.reference_coefficient == doctest::Approx(1.0 / (2.0 * kPi * kPi)).epsilon(1e-15));
}

TEST_CASE("grid hash is stable and shape-sensitive") {
    const auto a = enumerate_modes(2.0 * kPi, 2);
    const auto b = enumerate_modes(2.0 * kPi, 2);
    const auto c = enumerate_modes(2.0 * kPi, 3);
    CHECK(a.hash() == b.hash());
    CHECK(a.hash() != c.hash());
}

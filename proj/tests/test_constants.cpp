#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "gravistoch/constants.hpp"
#include "gravistoch/errors.hpp"

using namespace gravistoch;

TEST_CASE("nelson diffusion parameter") {
    CHECK(nelson_diffusion(PhysicalConstants::natural()) == doctest::Approx(1.0).epsilon(1e-15));

    PhysicalConstants c = PhysicalConstants::from_nu(1.0, 2.0, 1.0 / (16.0 * kPi));
    CHECK(nelson_diffusion(c) == doctest::Approx(2.0).epsilon(1e-15));

    CHECK_THROWS_AS(PhysicalConstants::from_nu(1.0, 1.0, 0.0), config_error);  // G > 0 required
}

TEST_CASE("nu from beta") {
    const auto c = PhysicalConstants::natural();
    CHECK(nu_from_beta(0.0, c) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(nu_from_beta(-2.0, c) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK_THROWS_AS(nu_from_beta(2.0, c), config_error);
    CHECK_THROWS_AS(nu_from_beta(3.0, c), config_error);
}

TEST_CASE("complex-weight parameter z") {
    CHECK(z_from_beta(0.0) == 1.0);
    CHECK(z_from_beta(-2.0) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(z_from_beta(1.5) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK_THROWS_AS(z_from_beta(2.0), config_error);
}

TEST_CASE("beta family properties") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> uh(0.1, 5.0);
    for (int i = 0; i < 200; ++i) {
        PhysicalConstants c;
        c.hbar = uh(rng);
        c.G = uh(rng);
        c.nu = uh(rng);
        CHECK(nu_from_beta(0.0, c) == nelson_diffusion(c));
    }

    // strictly increasing in beta
    std::uniform_real_distribution<double> ub(-20.0, 1.99);
    const auto c = PhysicalConstants::natural();
    for (int i = 0; i < 200; ++i) {
        double b1 = ub(rng), b2 = ub(rng);
        if (b1 == b2) continue;
        if (b1 > b2) std::swap(b1, b2);
        CHECK(nu_from_beta(b1, c) < nu_from_beta(b2, c));
    }

    for (int i = 0; i < 200; ++i) {
        const double b = ub(rng);
        const double z = z_from_beta(b);
        CHECK(z * z * (1.0 - b / 2.0) == doctest::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("constants validation and derived scales") {
    CHECK_THROWS_AS(PhysicalConstants::from_beta(2.5), config_error);
    CHECK_THROWS_AS(PhysicalConstants::from_nu(-1.0), config_error);
    CHECK_THROWS_AS(PhysicalConstants::from_nu(1.0, -1.0), config_error);

    const auto c = PhysicalConstants::natural();
    CHECK(c.sixteen_pi_G() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(c.oscillator_mass() == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(c.decay_rate(2.0) == doctest::Approx(2.0).epsilon(1e-15));

    // deterministic limit: nu = 0 is valid, beta runs to -infinity
    const auto bohm = PhysicalConstants::from_nu(0.0);
    CHECK(bohm.decay_rate(1.0) == 0.0);
    CHECK(bohm.beta < 2.0);

    // nu -> beta -> nu round trip
    const auto c2 = PhysicalConstants::from_nu(0.7);
    CHECK(nu_from_beta(c2.beta, c2) == doctest::Approx(0.7).epsilon(1e-14));
}

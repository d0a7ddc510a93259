#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "gravistoch/errors.hpp"
#include "gravistoch/polarization.hpp"
#include "test_util.hpp"

using namespace gravistoch;
using namespace gravistoch::polarization;

namespace {
const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
}

TEST_CASE("canonical basis along +z") {
    const auto basis = basis_for({0.0, 0.0, 1.0});

    const Mat3& p = basis.plus.components;
    CHECK(p[0][0] == inv_sqrt2);
    CHECK(p[1][1] == -inv_sqrt2);
    CHECK(p[2][2] == 0.0);
    CHECK(p[0][1] == 0.0);
    CHECK(p[0][2] == 0.0);
    CHECK(p[1][2] == 0.0);

    const Mat3& x = basis.cross.components;
    CHECK(x[0][1] == inv_sqrt2);
    CHECK(x[1][0] == inv_sqrt2);
    CHECK(x[0][0] == 0.0);
    CHECK(x[1][1] == 0.0);
    CHECK(x[2][2] == 0.0);

    // direction-only dependence
    const auto scaled_basis = basis_for({0.0, 0.0, 2.0});
    CHECK(scaled_basis.plus.components == basis.plus.components);
    CHECK(scaled_basis.cross.components == basis.cross.components);

    CHECK_THROWS_AS(basis_for({0.0, 0.0, 0.0}), config_error);
}

TEST_CASE("transverse projector") {
    const Mat3 pz = transverse_projector({0.0, 0.0, 1.0});
    CHECK(pz[0][0] == 1.0);
    CHECK(pz[1][1] == 1.0);
    CHECK(pz[2][2] == 0.0);
    CHECK(pz[0][1] == 0.0);

    // diagonal direction
    const Mat3 pd = transverse_projector({inv_sqrt2, inv_sqrt2, 0.0});
    CHECK(pd[0][0] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(pd[0][1] == doctest::Approx(-0.5).epsilon(1e-14));
    CHECK(pd[1][1] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(pd[2][2] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(pd[0][2] == doctest::Approx(0.0).epsilon(1e-14));

    auto rng = testutil::engine(3);
    for (int trial = 0; trial < 100; ++trial) {
        const Vec3 k = testutil::random_nonzero_vec3(rng);
        const Mat3 p = transverse_projector(k);
        // annihilates k
        for (int i = 0; i < 3; ++i) {
            double s = 0.0;
            for (int j = 0; j < 3; ++j) s += p[i][j] * k[j];
            CHECK(std::abs(s) < 1e-14 * norm(k));
        }
        // idempotent with rank 2
        double trace_p = trace(p);
        CHECK(trace_p == doctest::Approx(2.0).epsilon(1e-13));
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double pp = 0.0;
                for (int l = 0; l < 3; ++l) pp += p[i][l] * p[l][j];
                CHECK(pp == doctest::Approx(p[i][j]).epsilon(1e-12).scale(1.0));
            }
    }
    CHECK_THROWS_AS(transverse_projector({0.0, 0.0, 0.0}), config_error);
}

TEST_CASE("polarization sum closed form vs basis contraction") {
    // axis-aligned values
    const Rank4 t = polarization_sum({0.0, 0.0, 1.0});
    CHECK(t(0, 0, 0, 0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(t(0, 0, 1, 1) == doctest::Approx(-0.5).epsilon(1e-15));

    // the same numbers from the explicit two-state contraction
    const auto basis = basis_for({0.0, 0.0, 1.0});
    const Rank4 s = polarization_sum_from_basis(basis);
    CHECK(s(0, 0, 0, 0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(s(0, 0, 1, 1) == doctest::Approx(-0.5).epsilon(1e-15));

    auto rng = testutil::engine(11);
    for (int trial = 0; trial < 1000; ++trial) {
        const Vec3 k = testutil::random_nonzero_vec3(rng);
        const auto b = basis_for(k);
        const Rank4 closed = polarization_sum(k);
        const Rank4 summed = polarization_sum_from_basis(b);
        CHECK(closed.max_abs_diff(summed) < 1e-12);

        // transversality of the rank-4 tensor
        double max_contraction = 0.0;
        for (int j = 0; j < 3; ++j)
            for (int a = 0; a < 3; ++a)
                for (int bb = 0; bb < 3; ++bb) {
                    double s2 = 0.0;
                    for (int i = 0; i < 3; ++i) s2 += closed(i, j, a, bb) * k[i];
                    max_contraction = std::max(max_contraction, std::abs(s2) / norm(k));
                }
        CHECK(max_contraction < 1e-13);

        // two polarization states: full contraction equals 2
        double full = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) full += closed(i, j, i, j);
        CHECK(full == doctest::Approx(2.0).epsilon(1e-13));
    }
}

TEST_CASE("defining identities hold for random wavevectors") {
    auto rng = testutil::engine(23);
    for (int trial = 0; trial < 1000; ++trial) {
        const Vec3 k = testutil::random_nonzero_vec3(rng);
        const auto basis = basis_for(k);
        CHECK(check_invariants(basis).max() < 1e-12);
    }
}

TEST_CASE("parity: same tensors for k and -k") {
    auto rng = testutil::engine(37);
    for (int trial = 0; trial < 200; ++trial) {
        const Vec3 k = testutil::random_nonzero_vec3(rng);
        const Vec3 mk = scaled(k, -1.0);
        const auto a = basis_for(k);
        const auto b = basis_for(mk);
        // exact equality, not approximate: the frame is built from the axis line
        CHECK(a.plus.components == b.plus.components);
        CHECK(a.cross.components == b.cross.components);
    }
    // axis-aligned negative direction as well
    CHECK(basis_for({0.0, 0.0, -1.0}).plus.components ==
          basis_for({0.0, 0.0, 1.0}).plus.components);
}

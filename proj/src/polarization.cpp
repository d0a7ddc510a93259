#include "gravistoch/polarization.hpp"

#include <algorithm>
#include <cmath>

#include "gravistoch/errors.hpp"

namespace gravistoch::polarization {

namespace {

// Sign-normalize a unit vector so its first nonzero component is positive.
// k and -k then map to the same direction, which makes the basis even in k.
Vec3 axis_line_representative(const Vec3& khat) {
    for (int i = 0; i < 3; ++i) {
        if (khat[i] != 0.0) return khat[i] > 0.0 ? khat : scaled(khat, -1.0);
    }
    return khat;  // unreachable for nonzero input
}

int least_aligned_axis(const Vec3& khat) {
    int axis = 0;
    double best = std::abs(khat[0]);
    for (int i = 1; i < 3; ++i) {
        if (std::abs(khat[i]) < best) {
            best = std::abs(khat[i]);
            axis = i;
        }
    }
    return axis;
}

}  // namespace

PolarizationBasis basis_for(const Vec3& k) {
    const double kn = norm(k);
    if (kn == 0.0) throw config_error("polarization: wavevector must be nonzero");

    const Vec3 khat = axis_line_representative(scaled(k, 1.0 / kn));

    Vec3 seed{0.0, 0.0, 0.0};
    seed[least_aligned_axis(khat)] = 1.0;

    const Vec3 e1 = normalized(sub(seed, scaled(khat, dot(seed, khat))));
    const Vec3 e2 = cross(khat, e1);

    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    Mat3 plus = zero_mat3();
    Mat3 crossed = zero_mat3();
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            plus[i][j] = (e1[i] * e1[j] - e2[i] * e2[j]) * inv_sqrt2;
            crossed[i][j] = (e1[i] * e2[j] + e2[i] * e1[j]) * inv_sqrt2;
        }
    }
    return PolarizationBasis{{plus, k, Pol::plus}, {crossed, k, Pol::cross}};
}

Mat3 transverse_projector(const Vec3& k) {
    const double k2 = dot(k, k);
    if (k2 == 0.0) throw config_error("polarization: wavevector must be nonzero");
    Mat3 p;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) p[i][j] = (i == j ? 1.0 : 0.0) - k[i] * k[j] / k2;
    return p;
}

Rank4 polarization_sum(const Vec3& k) {
    const Mat3 p = transverse_projector(k);
    Rank4 t;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b)
                    t(i, j, a, b) = 0.5 * (-p[i][j] * p[a][b] + p[i][a] * p[j][b] + p[i][b] * p[j][a]);
    return t;
}

Rank4 polarization_sum_from_basis(const PolarizationBasis& basis) {
    Rank4 t;
    for (const auto* eps : {&basis.plus.components, &basis.cross.components})
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int a = 0; a < 3; ++a)
                    for (int b = 0; b < 3; ++b) t(i, j, a, b) += (*eps)[i][j] * (*eps)[a][b];
    return t;
}

double BasisResiduals::max() const {
    return std::max({symmetry, trace, transversality, normalization, orthogonality, sum_rule});
}

BasisResiduals check_invariants(const PolarizationBasis& basis) {
    BasisResiduals r{0, 0, 0, 0, 0, 0};
    const Vec3& k = basis.plus.wavevector;
    for (const auto* t : {&basis.plus, &basis.cross}) {
        const Mat3& e = t->components;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                r.symmetry = std::max(r.symmetry, std::abs(e[i][j] - e[j][i]));
        r.trace = std::max(r.trace, std::abs(trace(e)));
        for (int j = 0; j < 3; ++j) {
            double kij = k[0] * e[0][j] + k[1] * e[1][j] + k[2] * e[2][j];
            r.transversality = std::max(r.transversality, std::abs(kij) / std::max(norm(k), 1e-300));
        }
        r.normalization = std::max(r.normalization, std::abs(contract(e, e) - 1.0));
    }
    r.orthogonality = std::abs(contract(basis.plus.components, basis.cross.components));
    r.sum_rule = polarization_sum(k).max_abs_diff(polarization_sum_from_basis(basis));
    return r;
}

}  // namespace gravistoch::polarization

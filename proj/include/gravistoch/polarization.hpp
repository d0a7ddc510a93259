#pragma once
#include "gravistoch/linalg.hpp"

namespace gravistoch::polarization {

enum class Pol { plus, cross };

inline const char* pol_name(Pol p) { return p == Pol::plus ? "plus" : "cross"; }

// Real symmetric traceless transverse 3x3 tensor attached to a wavevector,
// unit-normalized in the Frobenius sense.
struct PolarizationTensor {
    Mat3 components;
    Vec3 wavevector;
    Pol label;
};

struct PolarizationBasis {
    PolarizationTensor plus;
    PolarizationTensor cross;
};

// The two linear polarization tensors for wavevector k.
//
// The frame is built from the axis line of k: k_hat is sign-normalized so its
// first nonzero component is positive, the transverse seed axis is the
// coordinate axis least aligned with k_hat (lowest index on ties), and
// (e1, e2, k_hat) is the resulting right-handed triad. This makes the basis
// deterministic, even under k -> -k, and equal to the canonical diag(1,-1,0)
// and off-diagonal matrices (each over sqrt(2)) when k is along +z.
// Throws for k = 0.
PolarizationBasis basis_for(const Vec3& k);

// Projector onto the plane transverse to k: delta_ij - k_i k_j / |k|^2.
Mat3 transverse_projector(const Vec3& k);

// Sum over the two polarization states of eps_ij eps_kl, in closed form:
// (1/2) (-P_ij P_kl + P_ik P_jl + P_il P_jk) with P the transverse projector.
Rank4 polarization_sum(const Vec3& k);

// Same tensor assembled directly from the basis tensors; used to cross-check
// the closed form.
Rank4 polarization_sum_from_basis(const PolarizationBasis& basis);

// Worst-case residuals of the defining identities of a basis.
struct BasisResiduals {
    double symmetry;        // max |eps_ij - eps_ji|
    double trace;           // max |eps_ii|
    double transversality;  // max |k_i eps_ij|
    double normalization;   // max |eps:eps - 1|
    double orthogonality;   // |eps(+):eps(x)|
    double sum_rule;        // max |closed-form sum - basis sum|
    double max() const;
};

BasisResiduals check_invariants(const PolarizationBasis& basis);

}  // namespace gravistoch::polarization

#pragma once
#include <complex>

#include "gravistoch/constants.hpp"
#include "gravistoch/lattice.hpp"
#include "gravistoch/linalg.hpp"

namespace gravistoch::ground_state {

// Stationary law of one mode of the ground-state diffusion: each real
// amplitude component is a zero-mean Gaussian Ornstein-Uhlenbeck process with
// variance 16*pi*G*hbar/omega and decay rate gamma = nu*omega/(16*pi*G*hbar).
// Equal-time statistics do not depend on nu; only the decay rate does.
struct ModeLaw {
    double omega;
    double variance;
    double gamma;
};

ModeLaw mode_law(double omega, const PhysicalConstants& c);

// Ground-state drift, -gamma(omega) * Q. Linear in Q.
std::complex<double> drift(std::complex<double> q, double omega, const PhysicalConstants& c);

// Per-component lagged covariance of the diffusion: variance * exp(-gamma*tau).
double stochastic_mode_covariance(double omega, double tau, const PhysicalConstants& c);

// Per-component vacuum two-point kernel of the quantum theory,
// (16 pi G hbar / omega) * exp(-i omega tau) for tau >= 0.
std::complex<double> quantum_mode_propagator(double omega, double tau,
                                             const PhysicalConstants& c);

// |quantum kernel continued to imaginary time t -> -i (nu/16 pi G hbar) t,
// minus the stochastic kernel|. Vanishes identically; returned as a residual
// so the identity is checked numerically rather than assumed. Throws for
// nu = 0 (the continuation degenerates).
double schwinger_check(double omega, double tau, const PhysicalConstants& c);

// Ground-state energy per (polarization, wavevector) degree of freedom,
// hbar*omega/2, computed as twice the mean potential energy of the mode
// (virial doubling of f * omega^2 |Q|^2 / 4 under the stationary law).
double mode_energy(double omega, const PhysicalConstants& c);

// Equal- and unequal-time field covariance summed over lattice modes:
// (1/L^3) sum over both pair members of exp(i k . dx) * kernel(omega, tau)
// * polarization_sum(k). Real and symmetric under (ij) <-> (kl).
Rank4 field_covariance(const Vec3& dx, double tau, const lattice::ModeGrid& grid,
                       const PhysicalConstants& c);

// Continuum version: product Gauss-Legendre quadrature in spherical
// coordinates up to |k| = k_max.
struct ContinuumQuadrature {
    double k_max = 4.0;
    int n_radial = 64;
    int n_polar = 32;
    int n_azimuth = 32;
};

Rank4 field_covariance(const Vec3& dx, double tau, const ContinuumQuadrature& quad,
                       const PhysicalConstants& c);

}  // namespace gravistoch::ground_state

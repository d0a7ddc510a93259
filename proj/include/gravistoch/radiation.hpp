#pragma once
#include <complex>
#include <cstdint>
#include <vector>

#include "gravistoch/constants.hpp"
#include "gravistoch/lattice.hpp"

namespace gravistoch::radiation {

// Uniform random phases per stored (polarization, wavevector) entry. The
// partner at -k is never stored: its first phase equals the stored one and
// its second is shifted by pi, which is exactly the condition making the
// assembled field real.
struct PhaseAssignment {
    std::vector<double> theta1;
    std::vector<double> theta2;
    std::uint64_t seed = 0;
    std::uint64_t member = 0;
};

PhaseAssignment sample_phases(const lattice::ModeGrid& grid, std::uint64_t seed,
                              std::uint64_t member);

struct PhasePair {
    double theta1;
    double theta2;
};

// Phases of entry e, or of its -k partner (second phase advanced by pi,
// reduced mod 2*pi).
PhasePair phases_at(const PhaseAssignment& phases, std::size_t entry, bool negated_k);

// Mode amplitude of the random-wave ensemble at time t:
// sqrt(32 pi G hbar / omega) * (cos(omega t + theta1) + i cos(omega t + theta2)).
// The square root keeps the ensemble's second moments equal to the
// ground-state ones.
std::complex<double> evaluate_amplitude(const PhaseAssignment& phases,
                                        const lattice::ModeGrid& grid, std::size_t entry,
                                        double t, const PhysicalConstants& c);

// All entries at once; feeds lattice::assemble_field.
lattice::ModeState phase_state(const PhaseAssignment& phases, const lattice::ModeGrid& grid,
                               double t, const PhysicalConstants& c);

// Per-component lagged covariance of the phase ensemble:
// (16 pi G hbar / omega) * cos(omega tau). Oscillates instead of decaying.
double theta_mode_covariance(double omega, double tau, const PhysicalConstants& c);

// Real part of the vacuum two-point kernel; the symmetrized quantum
// expectation, equal to theta_mode_covariance identically.
double symmetrized_quantum_covariance(double omega, double tau, const PhysicalConstants& c);

struct KurtosisPoint {
    int n_max = 0;          // 0 = single mode, observable Re Q at omega = 1
    std::size_t modes = 0;  // (pol, k) modes including both pair members
    std::size_t samples = 0;
    double excess_kurtosis = 0.0;
    double se = 0.0;
};

// Excess kurtosis of the field component h_11 at the origin (or of Re Q for
// the single-mode case) across the phase ensemble, for each requested grid
// size. A single mode is far from Gaussian; growing grids approach zero by
// the central limit theorem.
std::vector<KurtosisPoint> gaussianity_scan(const std::vector<int>& n_max_list,
                                            std::size_t samples, std::uint64_t seed,
                                            const PhysicalConstants& c, double box_length);

}  // namespace gravistoch::radiation

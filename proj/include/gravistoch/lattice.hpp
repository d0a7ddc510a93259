#pragma once
#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "gravistoch/constants.hpp"
#include "gravistoch/linalg.hpp"
#include "gravistoch/polarization.hpp"

namespace gravistoch::lattice {

using polarization::Pol;

// One stored (polarization, wavevector) mode. Only one member of each
// {k, -k} pair is stored; the partner's amplitude is fixed by conjugation.
struct ModeEntry {
    std::array<int, 3> n;  // integer wavevector label, components in [-n_max, n_max]
    Vec3 k;                // 2*pi*n/L
    double omega;          // |k|
    Pol pol;
    Mat3 eps;              // polarization tensor (even under k -> -k)
};

// Periodic-box wavevector lattice with one representative per {k, -k} pair.
// Entries are ordered lexicographically in n with polarization (+, x) inner;
// a wavevector is representative when the first nonzero component of n is
// positive. k = 0 is excluded (zero frequency, no normalizable ground state).
class ModeGrid {
  public:
    static ModeGrid enumerate(double box_length, int n_max);

    double box_length() const { return box_length_; }
    int n_max() const { return n_max_; }
    std::size_t size() const { return entries_.size(); }  // (pol, k) entries
    std::size_t kpoint_pairs() const { return entries_.size() / 2; }
    const ModeEntry& entry(std::size_t i) const { return entries_[i]; }
    const std::vector<ModeEntry>& entries() const { return entries_; }
    double max_omega() const;

    std::uint64_t hash() const;  // stable identity for file headers

  private:
    double box_length_ = 0.0;
    int n_max_ = 0;
    std::vector<ModeEntry> entries_;
};

ModeGrid enumerate_modes(double box_length, int n_max);

// Complex amplitudes for every grid entry at one time instant.
struct ModeState {
    std::vector<std::complex<double>> q;
    double t = 0.0;
};

struct FieldSample {
    Mat3 h;                // real spatial metric perturbation
    double imag_residual;  // max |imaginary part| left by the conjugate pairing
};

// Evaluate the transverse-traceless field at point x by direct mode summation,
// including the conjugate partner of every stored entry.
FieldSample assemble_field(const ModeGrid& grid, const ModeState& state, const Vec3& x);

struct SpectrumBin {
    double omega_lo = 0.0;
    double omega_hi = 0.0;
    double omega_center = 0.0;
    double omega_mean = 0.0;  // mean mode frequency in the bin (center if empty)
    std::size_t count = 0;    // (pol, k) modes in the bin, both pair members
    double rho = 0.0;         // energy density per unit angular frequency
};

struct SpectrumResult {
    std::vector<SpectrumBin> bins;
    bool fitted = false;
    double fit_exponent = 0.0;
    double fit_coefficient = 0.0;
    double reference_coefficient = 0.0;  // hbar / (2 pi^2)
    std::size_t fit_bins = 0;
};

// Spectral energy density of the vacuum with half a quantum per mode, binned
// by angular frequency, with a log-log power-law fit over bins that lie inside
// the inscribed sphere of the cubic cutoff (introduced to avoid corner
// anisotropy) and hold at least min_modes_per_bin modes.
//
// With require_fit, throws guard_error unless at least 10 such bins exist.
SpectrumResult vacuum_spectrum(const ModeGrid& grid, const PhysicalConstants& c,
                               double bin_width, bool require_fit = true,
                               std::size_t min_modes_per_bin = 100);

}  // namespace gravistoch::lattice

#pragma once
#include <numbers>

namespace gravistoch {

inline constexpr double kPi = std::numbers::pi;

// Natural-unit value of G, chosen so that 16*pi*G = 1.
inline constexpr double kNaturalG = 1.0 / (16.0 * kPi);

/// Model constants and the beta <-> nu parameter family of the diffusion.
///
/// The per-mode oscillator carries mass f = 1/(32 pi G); with that convention
/// the diffusion parameter generated by beta is
///     nu(beta) = 16 pi G hbar / sqrt(1 - beta/2),
/// so beta = 0 reproduces the Nelson value nu_N = 16 pi G hbar.
struct PhysicalConstants {
    double hbar = 1.0;
    double G = kNaturalG;
    double nu = 1.0;    // diffusion parameter (defaults to nu_N in natural units)
    double beta = 0.0;  // dynamical parameter generating nu; must stay < 2

    // hbar = 1, 16*pi*G = 1, nu = nu_N.
    static PhysicalConstants natural();
    static PhysicalConstants from_nu(double nu, double hbar = 1.0, double G = kNaturalG);
    static PhysicalConstants from_beta(double beta, double hbar = 1.0, double G = kNaturalG);

    double sixteen_pi_G() const { return 16.0 * kPi * G; }
    // Per-mode oscillator mass f = 1/(32 pi G).
    double oscillator_mass() const { return 1.0 / (32.0 * kPi * G); }
    // Autocorrelation decay rate of a mode of angular frequency omega:
    // gamma(omega) = nu * omega / (16 pi G hbar).
    double decay_rate(double omega) const { return nu * omega / (sixteen_pi_G() * hbar); }

    // Throws config_error when any field is out of range.
    void validate() const;
};

// Nelson's diffusion parameter, 16*pi*G*hbar.
double nelson_diffusion(const PhysicalConstants& c);

// nu(beta) = nelson_diffusion / sqrt(1 - beta/2). Throws for beta >= 2.
double nu_from_beta(double beta, const PhysicalConstants& c);

// Complex-weight parameter z(beta) = (1 - beta/2)^{-1/2}. Throws for beta >= 2.
double z_from_beta(double beta);

}  // namespace gravistoch

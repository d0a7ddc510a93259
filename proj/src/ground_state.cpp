#include "gravistoch/ground_state.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "gravistoch/errors.hpp"

namespace gravistoch::ground_state {

namespace {

void require_positive_omega(double omega) {
    if (!(omega > 0.0))
        throw config_error("ground state: omega must be > 0 (got " + std::to_string(omega) + ")");
}

// Nodes/weights for Gauss-Legendre on [-1, 1] by Newton iteration on the
// Legendre polynomial.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    x.resize(n);
    w.resize(n);
    for (int i = 0; i < n; ++i) {
        double t = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = t;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (t * p1 - p0) / (t * t - 1.0);
            const double dt = p1 / dp;
            t -= dt;
            if (std::abs(dt) < 1e-15) break;
        }
        x[i] = t;
        w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
    }
}

}  // namespace

ModeLaw mode_law(double omega, const PhysicalConstants& c) {
    require_positive_omega(omega);
    const double scale = c.sixteen_pi_G() * c.hbar;
    return ModeLaw{omega, scale / omega, c.decay_rate(omega)};
}

std::complex<double> drift(std::complex<double> q, double omega, const PhysicalConstants& c) {
    require_positive_omega(omega);
    return -c.decay_rate(omega) * q;
}

double stochastic_mode_covariance(double omega, double tau, const PhysicalConstants& c) {
    const ModeLaw law = mode_law(omega, c);
    return law.variance * std::exp(-law.gamma * tau);
}

std::complex<double> quantum_mode_propagator(double omega, double tau,
                                             const PhysicalConstants& c) {
    require_positive_omega(omega);
    const double amplitude = c.sixteen_pi_G() * c.hbar / omega;
    return amplitude * std::exp(std::complex<double>(0.0, -omega * tau));
}

double schwinger_check(double omega, double tau, const PhysicalConstants& c) {
    require_positive_omega(omega);
    if (!(c.nu > 0.0)) throw config_error("schwinger check: nu must be > 0");
    const double amplitude = c.sixteen_pi_G() * c.hbar / omega;
    // imaginary-time substitution tau -> -i * (nu / 16 pi G hbar) * tau in the
    // quantum phase
    const std::complex<double> scaled_time(0.0, -c.nu / (c.sixteen_pi_G() * c.hbar) * tau);
    const std::complex<double> continued =
        amplitude * std::exp(std::complex<double>(0.0, -omega) * scaled_time);
    return std::abs(continued - stochastic_mode_covariance(omega, tau, c));
}

double mode_energy(double omega, const PhysicalConstants& c) {
    const ModeLaw law = mode_law(omega, c);
    const double mean_q_sq = 2.0 * law.variance;  // |Q|^2 = Re^2 + Im^2
    const double potential = c.oscillator_mass() * 0.25 * omega * omega * mean_q_sq;
    return 2.0 * potential;
}

Rank4 field_covariance(const Vec3& dx, double tau, const lattice::ModeGrid& grid,
                       const PhysicalConstants& c) {
    Rank4 out;
    for (const auto& e : grid.entries()) {
        if (e.pol != lattice::Pol::plus) continue;  // polarization sum is closed-form per k
        const double kernel = stochastic_mode_covariance(e.omega, tau, c);
        // representative and its -k partner; imaginary parts cancel pairwise
        const double weight = 2.0 * std::cos(dot(e.k, dx)) * kernel;
        Rank4 pol = polarization::polarization_sum(e.k);
        pol *= weight;
        out += pol;
    }
    out *= 1.0 / std::pow(grid.box_length(), 3);
    return out;
}

Rank4 field_covariance(const Vec3& dx, double tau, const ContinuumQuadrature& quad,
                       const PhysicalConstants& c) {
    std::vector<double> xr, wr, xt, wt;
    gauss_legendre(quad.n_radial, xr, wr);
    gauss_legendre(quad.n_polar, xt, wt);

    Rank4 out;
    const double r_half = quad.k_max / 2.0;
    for (int ir = 0; ir < quad.n_radial; ++ir) {
        const double k = r_half * (xr[ir] + 1.0);
        if (k <= 0.0) continue;
        const double kernel = stochastic_mode_covariance(k, tau, c);
        for (int it = 0; it < quad.n_polar; ++it) {
            const double ct = xt[it];
            const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
            for (int ip = 0; ip < quad.n_azimuth; ++ip) {
                const double phi = 2.0 * kPi * (ip + 0.5) / quad.n_azimuth;
                const Vec3 kv{k * st * std::cos(phi), k * st * std::sin(phi), k * ct};
                // real part of exp(i k . dx); the odd part integrates to zero
                const double weight = wr[ir] * r_half * wt[it] *
                                      (2.0 * kPi / quad.n_azimuth) * k * k *
                                      std::cos(dot(kv, dx)) * kernel;
                Rank4 pol = polarization::polarization_sum(kv);
                pol *= weight;
                out += pol;
            }
        }
    }
    out *= 1.0 / std::pow(2.0 * kPi, 3);
    return out;
}

}  // namespace gravistoch::ground_state

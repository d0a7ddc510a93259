#include "gravistoch/constants.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "gravistoch/errors.hpp"

namespace gravistoch {

void PhysicalConstants::validate() const {
    if (!(hbar > 0.0)) throw config_error("hbar must be > 0 (got " + std::to_string(hbar) + ")");
    if (!(G > 0.0)) throw config_error("G must be > 0 (got " + std::to_string(G) + ")");
    if (!(nu >= 0.0)) throw config_error("nu must be >= 0 (got " + std::to_string(nu) + ")");
    if (!(beta < 2.0)) throw config_error("beta must be < 2 (got " + std::to_string(beta) + ")");
}

PhysicalConstants PhysicalConstants::natural() { return PhysicalConstants{}; }

PhysicalConstants PhysicalConstants::from_nu(double nu, double hbar, double G) {
    PhysicalConstants c;
    c.hbar = hbar;
    c.G = G;
    c.nu = nu;
    // beta that generates this nu; the deterministic limit nu -> 0 corresponds
    // to beta -> -infinity.
    const double nu_n = 16.0 * kPi * G * hbar;
    if (nu > 0.0) {
        const double r = nu_n / nu;
        c.beta = 2.0 * (1.0 - r * r);
    } else {
        c.beta = -std::numeric_limits<double>::infinity();
    }
    c.validate();
    return c;
}

PhysicalConstants PhysicalConstants::from_beta(double beta, double hbar, double G) {
    PhysicalConstants c;
    c.hbar = hbar;
    c.G = G;
    c.beta = beta;
    if (!(beta < 2.0)) throw config_error("beta must be < 2 (got " + std::to_string(beta) + ")");
    c.nu = nu_from_beta(beta, c);
    c.validate();
    return c;
}

double nelson_diffusion(const PhysicalConstants& c) { return c.sixteen_pi_G() * c.hbar; }

double nu_from_beta(double beta, const PhysicalConstants& c) {
    if (!(beta < 2.0)) throw config_error("beta must be < 2 (got " + std::to_string(beta) + ")");
    return nelson_diffusion(c) / std::sqrt(1.0 - beta / 2.0);
}

double z_from_beta(double beta) {
    if (!(beta < 2.0)) throw config_error("beta must be < 2 (got " + std::to_string(beta) + ")");
    return 1.0 / std::sqrt(1.0 - beta / 2.0);
}

}  // namespace gravistoch

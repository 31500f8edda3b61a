#pragma once

// Barotropic pressure closure p(rho) = rho^gamma and the derived quantities
// used throughout: sound speed c = sqrt(p'), and the invariant integral
//     A(rho) = integral_1^rho sqrt(p'(s))/s ds,
// in closed form. gamma == 1 is its own analytic branch (logarithmic A);
// it is never approached as a limit of the gamma > 1 formulas.

#include <cmath>
#include <stdexcept>

#include "rarewave/core.hpp"

namespace rarewave {

struct PressureLaw {
    Real gamma = 1.4;

    explicit PressureLaw(Real g = 1.4) : gamma(g) {
        if (!(g >= 1.0)) throw std::domain_error("PressureLaw: gamma must be >= 1");
    }

    bool isothermal() const { return gamma == 1.0; }

    Real p(Real rho) const { return std::pow(rho, gamma); }
    Real dp(Real rho) const { return gamma * std::pow(rho, gamma - 1.0); }
    Real d2p(Real rho) const { return gamma * (gamma - 1.0) * std::pow(rho, gamma - 2.0); }

    Real sound_speed(Real rho) const {
        require_positive_density(rho, "sound_speed");
        return std::sqrt(gamma) * std::pow(rho, 0.5 * (gamma - 1.0));
    }

    // A(rho); closed form, never quadrature.
    Real invariant_integral(Real rho) const {
        require_positive_density(rho, "invariant_integral");
        if (isothermal()) return std::log(rho);
        const Real sg = std::sqrt(gamma);
        return 2.0 * sg / (gamma - 1.0) * (std::pow(rho, 0.5 * (gamma - 1.0)) - 1.0);
    }

    // A'(rho) = sqrt(p'(rho))/rho
    Real invariant_integrand(Real rho) const { return sound_speed(rho) / rho; }

    // Mean of p'' over the segment [u,v]: (p'(v)-p'(u))/(v-u), with the
    // coincidence limit p''((u+v)/2).
    Real dp_mean_slope(Real u, Real v) const {
        if (std::abs(v - u) < 1e-9 * (std::abs(u) + std::abs(v))) return d2p(0.5 * (u + v));
        return (dp(v) - dp(u)) / (v - u);
    }

    // --- inversion of c(rho) + A(rho) = kappa ------------------------------
    // The fan interior and the smooth wave both reduce to this scalar solve;
    // it is linear in rho^{(gamma-1)/2} for gamma > 1 and exponential for
    // gamma == 1.
    Real rho_from_kappa(Real kappa) const {
        if (isothermal()) return std::exp(kappa - 1.0);
        const Real sg = std::sqrt(gamma);
        const Real y = (kappa * (gamma - 1.0) + 2.0 * sg) / (sg * (gamma + 1.0));
        if (!(y > 0.0)) throw std::domain_error("rho_from_kappa: vacuum state");
        return std::pow(y, 2.0 / (gamma - 1.0));
    }

    // d^n rho / d kappa^n for n = 1,2,3 (used by the exact wave derivatives).
    Real drho_dkappa(Real kappa, int order) const {
        if (isothermal()) return rho_from_kappa(kappa);  // all orders equal rho
        const Real sg = std::sqrt(gamma);
        const Real beta = (gamma - 1.0) / (sg * (gamma + 1.0));
        const Real y = (kappa * (gamma - 1.0) + 2.0 * sg) / (sg * (gamma + 1.0));
        const Real k = 2.0 / (gamma - 1.0);
        switch (order) {
            case 1: return k * beta * std::pow(y, k - 1.0);
            case 2: return k * (k - 1.0) * beta * beta * std::pow(y, k - 2.0);
            case 3: return k * (k - 1.0) * (k - 2.0) * beta * beta * beta * std::pow(y, k - 3.0);
            default: throw std::domain_error("drho_dkappa: order must be 1..3");
        }
    }
};

}  // namespace rarewave

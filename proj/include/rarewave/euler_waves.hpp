#pragma once

// Exact objects of the 1-d isentropic Euler system: characteristic speeds,
// Riemann invariants, completion of 2-rarefaction end states, and the
// centered expansion fan. Everything here is closed form.

#include <cmath>
#include <stdexcept>
#include <utility>

#include "rarewave/pressure.hpp"

namespace rarewave {

struct CharSpeeds {
    Real lambda1, lambda2;
};

inline CharSpeeds char_speeds(Real rho, Real u1, const PressureLaw& law) {
    require_positive_density(rho, "char_speeds");
    const Real c = law.sound_speed(rho);
    return {u1 - c, u1 + c};
}

struct RiemannInvariants {
    Real z1, z2;
};

inline RiemannInvariants riemann_invariants(Real rho, Real u1, const PressureLaw& law) {
    require_positive_density(rho, "riemann_invariants");
    const Real a = law.invariant_integral(rho);
    return {u1 + a, u1 - a};
}

// Far-field constants of a 2-rarefaction: rho-/rho+ with the velocity jump
// pinned by constancy of Z2 across the wave.
struct WaveEndStates {
    Real rho_minus, rho_plus;
    Real u1_minus, u1_plus;
    Real lambda2_minus, lambda2_plus;
    Real z2;  // shared second Riemann invariant

    const PressureLaw law;
};

inline WaveEndStates complete_end_states(Real rho_minus, Real u1_minus, Real rho_plus,
                                         const PressureLaw& law) {
    require_positive_density(rho_minus, "complete_end_states");
    require_positive_density(rho_plus, "complete_end_states");
    if (!(rho_minus < rho_plus))
        throw std::invalid_argument("complete_end_states: requires rho_minus < rho_plus");
    const Real u1_plus =
        u1_minus + (law.invariant_integral(rho_plus) - law.invariant_integral(rho_minus));
    WaveEndStates s{rho_minus,
                    rho_plus,
                    u1_minus,
                    u1_plus,
                    char_speeds(rho_minus, u1_minus, law).lambda2,
                    char_speeds(rho_plus, u1_plus, law).lambda2,
                    riemann_invariants(rho_minus, u1_minus, law).z2,
                    law};
    return s;
}

inline Real wave_strength(const WaveEndStates& s) { return s.rho_plus - s.rho_minus; }

// One point of the self-similar fan.
struct FanPoint {
    Real rho, u1, xi;
};

// omega(xi): clamped self-similar speed profile of the 2-fan.
inline Real fan_speed(Real xi, const WaveEndStates& s) {
    if (xi < s.lambda2_minus) return s.lambda2_minus;
    if (xi >= s.lambda2_plus) return s.lambda2_plus;
    return xi;
}

// Velocity on the Z2 = const curve as a function of the lambda2 value w;
// affine in w for every gamma >= 1.
inline Real velocity_from_lambda2(Real w, Real z2, const PressureLaw& law) {
    const Real g = law.gamma;
    return (2.0 * w + (g - 1.0) * z2 - 2.0 * std::sqrt(g)) / (g + 1.0);
}

inline FanPoint centered_fan(Real x1, Real t, const WaveEndStates& s) {
    if (!(t > 0.0)) throw std::domain_error("centered_fan: t must be positive (wave is singular at t=0)");
    const Real xi = x1 / t;
    if (xi <= s.lambda2_minus) return {s.rho_minus, s.u1_minus, xi};
    if (xi >= s.lambda2_plus) return {s.rho_plus, s.u1_plus, xi};
    // interior: lambda2(rho,u) = xi and Z2(rho,u) = Z2-, i.e. c(rho)+A(rho) = xi - Z2
    const Real rho = s.law.rho_from_kappa(xi - s.z2);
    const Real u1 = velocity_from_lambda2(xi, s.z2, s.law);
    return {rho, u1, xi};
}

}  // namespace rarewave

#pragma once

// Smooth rarefaction approximation. The Burgers problem
//     w_t + (w^2/2)_x = 0,   w(x,0) = (l- + l+)/2 + (l+ - l-)/2 * tanh(x)
// (l+- the extreme 2-characteristic speeds) is solved by the method of
// characteristics: the foot point x0 of the characteristic through (x,t)
// satisfies x = x0 + w0(x0) t, with a unique root because w0 is strictly
// increasing. The smooth wave (rho, u1) is then recovered from w by the same
// invariant relations as the centered fan.
//
// All derivatives are exact: implicit differentiation of the characteristic
// map, chained through the closed-form state maps. With D = 1 + t w0'(x0),
//     w_x   = w0'/D,
//     w_xx  = w0''/D^3,
//     w_xxx = w0'''/D^4 - 3 t (w0'')^2 / D^5,
//     w_t   = -w w_x,  etc.

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "rarewave/euler_waves.hpp"
#include "rarewave/fit.hpp"
#include "rarewave/quadrature.hpp"

namespace rarewave {

struct SmoothWaveParams {
    WaveEndStates states;
    Real newton_tol = 1e-13;
    int newton_max_iter = 100;

    SmoothWaveParams(const WaveEndStates& s, Real tol = 1e-13, int max_iter = 100)
        : states(s), newton_tol(tol), newton_max_iter(max_iter) {
        if (!(tol > 0.0 && tol <= 1e-8))
            throw std::domain_error("SmoothWaveParams: newton_tol must lie in (0, 1e-8]");
        if (!(s.lambda2_minus < s.lambda2_plus))
            throw std::domain_error("SmoothWaveParams: degenerate wave (lambda2- >= lambda2+)");
    }

    Real mid() const { return 0.5 * (states.lambda2_minus + states.lambda2_plus); }
    Real half_span() const { return 0.5 * (states.lambda2_plus - states.lambda2_minus); }

    // Initial profile w0 and derivatives; sech via 1/cosh to avoid the
    // catastrophic 1 - tanh^2 cancellation in the tails.
    Real w0(Real x) const { return mid() + half_span() * std::tanh(x); }
    Real dw0(Real x) const {
        const Real sch = 1.0 / std::cosh(x);
        return half_span() * sch * sch;
    }
    Real d2w0(Real x) const {
        const Real sch = 1.0 / std::cosh(x);
        return -2.0 * half_span() * sch * sch * std::tanh(x);
    }
    Real d3w0(Real x) const {
        const Real sch = 1.0 / std::cosh(x);
        const Real s2 = sch * sch, th = std::tanh(x);
        return 2.0 * half_span() * s2 * (2.0 * th * th - s2);
    }
};

// ============================================================================
// Characteristic foot point and Burgers solution
// ============================================================================

// Bracketed Newton with bisection fallback on [x1 - l+ t, x1 - l- t]: the
// Newton step is taken only while it stays inside the bracket and keeps
// halving the residual scale; otherwise the step bisects, so worst-case
// convergence is bisection-rate.
inline Real burgers_foot_point(Real x1, Real t, const SmoothWaveParams& prm) {
    if (!(t >= 0.0)) throw std::domain_error("burgers_smooth: t must be nonnegative");
    if (t == 0.0) return x1;
    const auto& s = prm.states;
    Real lo = x1 - s.lambda2_plus * t;   // F(lo) <= 0
    Real hi = x1 - s.lambda2_minus * t;  // F(hi) >= 0
    auto F = [&](Real x0) { return x0 + prm.w0(x0) * t - x1; };
    const Real scale = 1.0 + std::abs(x1) + std::abs(s.lambda2_plus) * t;
    Real x0 = 0.5 * (lo + hi);
    Real f = F(x0);
    Real step_old = hi - lo;
    for (int it = 0; it < prm.newton_max_iter; ++it) {
        if (std::abs(f) <= prm.newton_tol * scale) return x0;
        if (f > 0.0) hi = x0;
        else lo = x0;
        if (hi - lo < prm.newton_tol) return x0;
        const Real dF = 1.0 + t * prm.dw0(x0);
        Real xn = x0 - f / dF;
        const bool inside = (xn > lo && xn < hi);
        const bool fast = std::abs(f) <= 0.5 * std::abs(step_old * dF);
        step_old = (inside && fast) ? std::abs(f / dF) : 0.5 * (hi - lo);
        xn = (inside && fast) ? xn : 0.5 * (lo + hi);
        if (xn == x0) return x0;
        x0 = xn;
        f = F(x0);
    }
    throw ConvergenceError("burgers_foot_point: iteration cap exceeded", std::abs(f));
}

inline Real burgers_smooth(Real x1, Real t, const SmoothWaveParams& prm) {
    return prm.w0(burgers_foot_point(x1, t, prm));
}

// Derivatives of w through the characteristic map, all orders the artifact
// needs. Index convention: dx[k] = spatial derivative of order k (dx[0] = w).
struct BurgersJet {
    Real w;
    Real wx, wxx, wxxx;
    Real wt, wxt, wtt;
};

inline BurgersJet burgers_jet(Real x1, Real t, const SmoothWaveParams& prm) {
    const Real g = burgers_foot_point(x1, t, prm);
    const Real w1 = prm.dw0(g), w2 = prm.d2w0(g), w3 = prm.d3w0(g);
    const Real D = 1.0 + t * w1;
    BurgersJet j;
    j.w = prm.w0(g);
    j.wx = w1 / D;
    j.wxx = w2 / (D * D * D);
    j.wxxx = w3 / (D * D * D * D) - 3.0 * t * w2 * w2 / (D * D * D * D * D);
    j.wt = -j.w * j.wx;
    j.wxt = -j.wx * j.wx - j.w * j.wxx;
    j.wtt = 2.0 * j.w * j.wx * j.wx + j.w * j.w * j.wxx;
    return j;
}

// ============================================================================
// State sampling and weights
// ============================================================================

struct SmoothWaveSample {
    Real omega;
    Real rho_r, u1_r;
    Real sigma, eta;
};

inline SmoothWaveSample sample_smooth_wave(Real x1, Real t, const SmoothWaveParams& prm) {
    const auto& s = prm.states;
    const Real w = burgers_smooth(x1, t, prm);
    const Real rho = s.law.rho_from_kappa(w - s.z2);
    const Real u1 = velocity_from_lambda2(w, s.z2, s.law);
    SmoothWaveSample out;
    out.omega = w;
    out.rho_r = rho;
    out.u1_r = u1;
    out.sigma = (rho - s.rho_minus) / (s.rho_plus - s.rho_minus);
    out.eta = (u1 - s.u1_minus) / (s.u1_plus - s.u1_minus);
    return out;
}

// Space-time jet of (rho, u1, sigma, eta). u1 is affine in w, so its chain
// rule is trivial; rho needs d^n rho/d kappa^n.
struct SmoothWaveJet {
    SmoothWaveSample v;
    // spatial derivatives, order 1..3
    std::array<Real, 3> rho_x, u1_x, sigma_x, eta_x;
    // first time derivatives
    Real rho_t, u1_t, sigma_t, eta_t;
    // second spatial derivative of u1 appears in the momentum shift term
    Real d2_u1() const { return u1_x[1]; }
};

inline SmoothWaveJet smooth_wave_jet(Real x1, Real t, const SmoothWaveParams& prm) {
    const auto& s = prm.states;
    const auto j = burgers_jet(x1, t, prm);
    const Real kappa = j.w - s.z2;
    const Real r1 = s.law.drho_dkappa(kappa, 1);
    const Real r2 = s.law.drho_dkappa(kappa, 2);
    const Real r3 = s.law.drho_dkappa(kappa, 3);
    const Real au = 2.0 / (s.law.gamma + 1.0);

    SmoothWaveJet out;
    out.v.omega = j.w;
    out.v.rho_r = s.law.rho_from_kappa(kappa);
    out.v.u1_r = velocity_from_lambda2(j.w, s.z2, s.law);
    out.v.sigma = (out.v.rho_r - s.rho_minus) / (s.rho_plus - s.rho_minus);
    out.v.eta = (out.v.u1_r - s.u1_minus) / (s.u1_plus - s.u1_minus);

    out.rho_x = {r1 * j.wx, r2 * j.wx * j.wx + r1 * j.wxx,
                 r3 * j.wx * j.wx * j.wx + 3.0 * r2 * j.wx * j.wxx + r1 * j.wxxx};
    out.u1_x = {au * j.wx, au * j.wxx, au * j.wxxx};
    out.rho_t = r1 * j.wt;
    out.u1_t = au * j.wt;

    const Real drho = s.rho_plus - s.rho_minus;
    const Real du = s.u1_plus - s.u1_minus;
    for (int k = 0; k < 3; ++k) {
        out.sigma_x[k] = out.rho_x[k] / drho;
        out.eta_x[k] = out.u1_x[k] / du;
    }
    out.sigma_t = out.rho_t / drho;
    out.eta_t = out.u1_t / du;
    return out;
}

// Spatial derivatives of (rho_r, u1_r) of one order, per the module contract.
inline std::pair<Real, Real> wave_derivatives(Real x1, Real t, const SmoothWaveParams& prm,
                                              int order) {
    if (order < 1 || order > 3) throw std::domain_error("wave_derivatives: order must be 1..3");
    const auto jet = smooth_wave_jet(x1, t, prm);
    return {jet.rho_x[order - 1], jet.u1_x[order - 1]};
}

// Residuals of the 1-d isentropic Euler system at one point, evaluated from
// the exact jet (coding-integrity check; zero up to round-off).
inline std::pair<Real, Real> euler_residuals(Real x1, Real t, const SmoothWaveParams& prm) {
    const auto jet = smooth_wave_jet(x1, t, prm);
    const Real rho = jet.v.rho_r, u = jet.v.u1_r;
    const Real mass = jet.rho_t + jet.rho_x[0] * u + rho * jet.u1_x[0];
    const Real mom = jet.rho_t * u + rho * jet.u1_t + jet.rho_x[0] * u * u +
                     2.0 * rho * u * jet.u1_x[0] + prm.states.law.dp(rho) * jet.rho_x[0];
    return {mass, mom};
}

// ============================================================================
// L^p profiles over the line
// ============================================================================

// Integration window: the wave is confined to [l- t, l+ t] plus tanh tails;
// 40 units beyond the extreme characteristics the profile is saturated far
// below every tolerance used here.
inline std::pair<Real, Real> wave_window(Real t, const SmoothWaveParams& prm) {
    const Real hw = std::max(std::abs(prm.states.lambda2_plus), std::abs(prm.states.lambda2_minus));
    const Real X = hw * t + 40.0;
    return {-X, X};
}

// ||f||_{L^p(R)} for a pointwise evaluator f(x); p = inf via dense scan plus
// golden-section refinement.
template <typename F>
inline Real lp_norm_line(const F& f, Real p, Real a, Real b) {
    if (std::isinf(p)) {
        return max_scan_refine([&](Real x) { return std::abs(f(x)); }, a, b);
    }
    if (p == 1.0) return integrate([&](Real x) { return std::abs(f(x)); }, a, b, 1e-10);
    const Real val = integrate([&](Real x) { return std::pow(std::abs(f(x)), p); }, a, b, 1e-10);
    return std::pow(val, 1.0 / p);
}

// ||d1 rho||_p + ||d1 u1||_p at time t.
inline Real wave_gradient_norm(Real p, Real t, const SmoothWaveParams& prm) {
    auto [a, b] = wave_window(t, prm);
    const Real nr = lp_norm_line(
        [&](Real x) { return smooth_wave_jet(x, t, prm).rho_x[0]; }, p, a, b);
    const Real nu = lp_norm_line(
        [&](Real x) { return smooth_wave_jet(x, t, prm).u1_x[0]; }, p, a, b);
    return nr + nu;
}

inline void check_decay_times(const std::vector<double>& times) {
    if (times.size() < 10) throw FitError("decay report: need at least 10 sample times");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1])) throw FitError("decay report: times must increase");
    if (!(times.back() >= 100.0 * times.front()))
        throw FitError("decay report: times must span at least two decades");
}

// Fits ||d1(rho,u1)||_p against (1+t); the transient below t = 10 is excluded
// from the fit window.
inline DecaySeries wave_decay_report(Real p, const std::vector<double>& times,
                                     const SmoothWaveParams& prm) {
    check_decay_times(times);
    std::vector<double> ts, vs;
    for (double t : times) {
        if (t < 10.0) continue;
        ts.push_back(t);
        vs.push_back(wave_gradient_norm(p, t, prm));
    }
    return fit_rate(std::move(ts), std::move(vs), DecayModel::PowerLaw);
}

// sigma(1-sigma) and sigma-eta profiles and their growth reports.
inline Real weight_product_norm(Real p, Real t, const SmoothWaveParams& prm) {
    auto [a, b] = wave_window(t, prm);
    return lp_norm_line(
        [&](Real x) {
            const auto v = sample_smooth_wave(x, t, prm);
            return v.sigma * (1.0 - v.sigma);
        },
        p, a, b);
}

inline Real weight_gap_norm(Real p, Real t, const SmoothWaveParams& prm) {
    auto [a, b] = wave_window(t, prm);
    return lp_norm_line(
        [&](Real x) {
            const auto v = sample_smooth_wave(x, t, prm);
            return v.sigma - v.eta;
        },
        p, a, b);
}

struct WeightDecayReport {
    DecaySeries product;  // ||sigma(1-sigma)||_p vs (1+t)
    DecaySeries gap;      // ||sigma-eta||_p vs (1+t)
};

inline WeightDecayReport weight_decay_report(Real p, const std::vector<double>& times,
                                             const SmoothWaveParams& prm) {
    check_decay_times(times);
    std::vector<double> ts, a, b;
    for (double t : times) {
        if (t < 10.0) continue;
        ts.push_back(t);
        a.push_back(weight_product_norm(p, t, prm));
        b.push_back(weight_gap_norm(p, t, prm));
    }
    WeightDecayReport rep;
    rep.product = fit_rate(ts, std::move(a), DecayModel::PowerLaw);
    rep.gap = fit_rate(std::move(ts), std::move(b), DecayModel::PowerLaw);
    return rep;
}

// sup_t ||sigma-eta||_1 / (1+t); scaling probe for the wave-strength factor.
inline Real weight_gap_sup_quotient(const SmoothWaveParams& prm, const std::vector<double>& times) {
    Real sup = 0.0;
    for (double t : times) sup = std::max(sup, weight_gap_norm(1.0, t, prm) / (1.0 + t));
    return sup;
}

}  // namespace rarewave

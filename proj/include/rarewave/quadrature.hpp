#pragma once

// Adaptive Gauss-Kronrod (G7/K15) on a finite interval. Worst-interval
// refinement with a depth-first deterministic order.

#include <cmath>
#include <queue>
#include <stdexcept>
#include <vector>

#include "rarewave/core.hpp"

namespace rarewave {

namespace gk {

// K15 nodes (positive half) and weights; G7 weights on the shared nodes.
inline constexpr double kNodes[8] = {
    0.000000000000000000000000000000000, 0.207784955007898467600689403773245,
    0.405845151377397166906606412076961, 0.586087235467691130294144838258730,
    0.741531185599394439863864773280788, 0.864864423359769072789712788640926,
    0.949107912342758524526189684047851, 0.991455371120812639206854697526329};
inline constexpr double kWeightsK[8] = {
    0.209482141084727828012999174891714, 0.204432940075298892414161999234649,
    0.190350578064785409913256402421014, 0.169004726639267902826583426598550,
    0.140653259715525918745189590510238, 0.104790010322250183839876322541518,
    0.063092092629978553290700663189204, 0.022935322010529224963732008058970};
inline constexpr double kWeightsG[4] = {
    0.417959183673469387755102040816327, 0.381830050505118944950369775488975,
    0.279705391489276667901467771423780, 0.129484966168869693270611432679082};

struct Panel {
    double a, b, integral, err;
};

template <typename F>
inline Panel eval_panel(const F& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    const double fc = f(c);
    double resk = kWeightsK[0] * fc;
    double resg = kWeightsG[0] * fc;
    for (int i = 1; i < 8; ++i) {
        const double x = h * kNodes[i];
        const double fv = f(c - x) + f(c + x);
        resk += kWeightsK[i] * fv;
        if (i % 2 == 0) resg += kWeightsG[i / 2] * fv;
    }
    const double integral = resk * h;
    const double err = std::abs((resk - resg) * h);
    return {a, b, integral, err};
}

}  // namespace gk

// Integrates f over [a,b] to the requested absolute-or-relative tolerance.
// Throws ConvergenceError if the panel budget is exhausted.
template <typename F>
inline double integrate(const F& f, double a, double b, double rel_tol = 1e-11,
                        double abs_tol = 1e-300, int max_panels = 4000) {
    if (a == b) return 0.0;
    auto cmp = [](const gk::Panel& p, const gk::Panel& q) { return p.err < q.err; };
    std::priority_queue<gk::Panel, std::vector<gk::Panel>, decltype(cmp)> heap(cmp);
    // Seed with a few panels so a localized integrand is not missed.
    const int seed = 8;
    double total = 0.0, err = 0.0;
    for (int i = 0; i < seed; ++i) {
        auto p = gk::eval_panel(f, a + (b - a) * i / seed, a + (b - a) * (i + 1) / seed);
        total += p.integral;
        err += p.err;
        heap.push(p);
    }
    int n = seed;
    while (err > std::max(abs_tol, rel_tol * std::abs(total)) && n < max_panels) {
        gk::Panel worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        auto l = gk::eval_panel(f, worst.a, mid);
        auto r = gk::eval_panel(f, mid, worst.b);
        total += l.integral + r.integral - worst.integral;
        err += l.err + r.err - worst.err;
        heap.push(l);
        heap.push(r);
        ++n;
    }
    if (err > std::max(abs_tol, rel_tol * std::abs(total)) * 10.0)
        throw ConvergenceError("quadrature did not converge", err);
    return total;
}

// Golden-section maximization of a unimodal-near-peak function; the bracket
// comes from a dense scan so multimodal integrands are still handled.
template <typename F>
inline double max_scan_refine(const F& f, double a, double b, int scan_points = 4096) {
    double best = -1e300, xbest = a;
    for (int i = 0; i <= scan_points; ++i) {
        const double x = a + (b - a) * i / scan_points;
        const double v = f(x);
        if (v > best) {
            best = v;
            xbest = x;
        }
    }
    const double h = (b - a) / scan_points;
    double lo = std::max(a, xbest - h), hi = std::min(b, xbest + h);
    const double invphi = 0.6180339887498949;
    double x1 = hi - invphi * (hi - lo), x2 = lo + invphi * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 80; ++it) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + invphi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - invphi * (hi - lo);
            f1 = f(x1);
        }
    }
    return std::max({best, f1, f2});
}

}  // namespace rarewave

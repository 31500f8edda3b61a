#pragma once

// Discrete derivative stencils and W^{k,p} norms on torus/strip grids. The
// stencils are the solver's: 2nd-order centered in the interior, 2nd-order
// one-sided at the bounded-axis ends. |grad^j u| uses the multinomial sum
// over mixed partials, so the norms are rotation-consistent.

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "rarewave/grid.hpp"

namespace rarewave {

namespace detail {

// One derivative of given order along one axis. Periodic axes wrap; bounded
// axes use one-sided 2nd-order formulas at the edges.
inline Field axis_derivative(const Field& f, const Grid& g, int axis, int order) {
    const int n = g.n[axis];
    const Real h = g.dx[axis];
    const int need = (order == 3) ? 5 : (order == 2 ? 4 : 3);
    if (n < need + 1) throw std::domain_error("axis_derivative: grid too small for stencil");
    Field out(f.size());
    const int stride = (axis == 0) ? g.n[1] * g.n[2] : (axis == 1 ? g.n[2] : 1);

    auto at = [&](std::size_t base, int i, int off) -> double {
        int ii = i + off;
        if (g.periodic[axis]) {
            ii %= n;
            if (ii < 0) ii += n;
        }
        const long long shifted =
            static_cast<long long>(base) + static_cast<long long>(ii - i) * stride;
        return f[static_cast<std::size_t>(shifted)];
    };

    // iterate all cells; decompose flat index into the axis coordinate
    const std::size_t total = f.size();
    const std::size_t block = static_cast<std::size_t>(stride) * n;
    for (std::size_t p = 0; p < total; ++p) {
        const std::size_t within = p % block;
        const int i = static_cast<int>(within / stride);
        auto v = [&](int off) { return at(p, i, off); };
        double r;
        const bool lo_edge = !g.periodic[axis] && i - ((order == 3) ? 2 : 1) < 0;
        const bool hi_edge = !g.periodic[axis] && i + ((order == 3) ? 2 : 1) > n - 1;
        switch (order) {
            case 1:
                if (lo_edge) r = (-3.0 * v(0) + 4.0 * v(1) - v(2)) / (2.0 * h);
                else if (hi_edge) r = (3.0 * v(0) - 4.0 * v(-1) + v(-2)) / (2.0 * h);
                else r = (v(1) - v(-1)) / (2.0 * h);
                break;
            case 2:
                if (lo_edge) r = (2.0 * v(0) - 5.0 * v(1) + 4.0 * v(2) - v(3)) / (h * h);
                else if (hi_edge) r = (2.0 * v(0) - 5.0 * v(-1) + 4.0 * v(-2) - v(-3)) / (h * h);
                else r = (v(1) - 2.0 * v(0) + v(-1)) / (h * h);
                break;
            case 3:
                if (!g.periodic[axis] && i < 2) {
                    r = (-2.5 * v(0) + 9.0 * v(1) - 12.0 * v(2) + 7.0 * v(3) - 1.5 * v(4)) /
                        (h * h * h);
                } else if (!g.periodic[axis] && i > n - 3) {
                    r = (2.5 * v(0) - 9.0 * v(-1) + 12.0 * v(-2) - 7.0 * v(-3) + 1.5 * v(-4)) /
                        (h * h * h);
                } else {
                    r = (-v(-2) + 2.0 * v(-1) - 2.0 * v(1) + v(2)) / (2.0 * h * h * h);
                }
                break;
            default:
                throw std::domain_error("axis_derivative: order must be 1..3");
        }
        out[p] = r;
    }
    return out;
}

inline int factorial(int k) { return k <= 1 ? 1 : k * factorial(k - 1); }

// All multi-indices of total order j in d variables, with multinomial weights.
inline std::vector<std::pair<std::array<int, 3>, double>> multi_indices(int d, int j) {
    std::vector<std::pair<std::array<int, 3>, double>> out;
    for (int b0 = j; b0 >= 0; --b0)
        for (int b1 = j - b0; b1 >= 0; --b1) {
            const int b2 = j - b0 - b1;
            if ((d < 2 && b1 > 0) || (d < 3 && b2 > 0)) continue;
            const double w = static_cast<double>(factorial(j)) /
                             (factorial(b0) * factorial(b1) * factorial(b2));
            out.push_back({{b0, b1, b2}, w});
        }
    return out;
}

inline Field mixed_derivative(const Field& f, const Grid& g, const std::array<int, 3>& beta) {
    Field cur = f;
    for (int a = 0; a < 3; ++a) {
        int remaining = beta[a];
        // third-order pure derivative uses the dedicated 5-point stencil;
        // mixed ones compose lower orders
        while (remaining > 0) {
            const int step = std::min(remaining, (remaining == 3) ? 3 : (remaining == 2 ? 2 : 1));
            cur = axis_derivative(cur, g, a, step);
            remaining -= step;
        }
    }
    return cur;
}

}  // namespace detail

// |grad^j u| at every cell.
inline Field gradient_magnitude(const Field& f, const Grid& g, int j) {
    if (j == 0) {
        Field out(f.size());
        for (std::size_t i = 0; i < f.size(); ++i) out[i] = std::abs(f[i]);
        return out;
    }
    if (j > 3) throw std::domain_error("gradient_magnitude: order above stencil support");
    Field acc(f.size(), 0.0);
    for (const auto& [beta, w] : detail::multi_indices(g.d, j)) {
        const Field dfld = detail::mixed_derivative(f, g, beta);
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += w * dfld[i] * dfld[i];
    }
    for (double& v : acc) v = std::sqrt(v);
    return acc;
}

// L^p of a nonnegative cell field with the grid's quadrature weights.
inline Real lp_of_magnitude(const Field& mag, const Grid& g, Real p) {
    if (std::isinf(p)) {
        Real m = 0.0;
        for (double v : mag) m = std::max(m, v);
        return m;
    }
    std::vector<double> terms(mag.size());
    std::size_t q = 0;
    for (int i = 0; i < g.n[0]; ++i)
        for (int j = 0; j < g.n[1]; ++j)
            for (int k = 0; k < g.n[2]; ++k, ++q)
                terms[q] = g.cell_weight(i, j, k) * std::pow(mag[q], p);
    return std::pow(pairwise_sum(terms), 1.0 / p);
}

// Seminorm ||grad^j u||_{L^p}.
inline Real seminorm(const Field& f, const Grid& g, int j, Real p) {
    return lp_of_magnitude(gradient_magnitude(f, g, j), g, p);
}

// Full W^{k,p} norm; p = inf takes the max over orders.
inline Real grid_norm(const Field& f, const Grid& g, int k, Real p) {
    if (k < 0 || k > 3) throw std::domain_error("grid_norm: derivative order must be 0..3");
    if (!(p >= 1.0)) throw std::domain_error("grid_norm: p must be >= 1");
    if (std::isinf(p)) {
        Real m = 0.0;
        for (int j = 0; j <= k; ++j) m = std::max(m, seminorm(f, g, j, p));
        return m;
    }
    Real acc = 0.0;
    for (int j = 0; j <= k; ++j) acc += std::pow(seminorm(f, g, j, p), p);
    return std::pow(acc, 1.0 / p);
}

// Sum of component norms of a small collection of fields (the convention used
// for pair/vector quantities in the reports).
inline Real grid_norm_sum(const std::vector<const Field*>& fs, const Grid& g, int k, Real p) {
    Real acc = 0.0;
    for (const Field* f : fs) acc += grid_norm(*f, g, k, p);
    return acc;
}

}  // namespace rarewave

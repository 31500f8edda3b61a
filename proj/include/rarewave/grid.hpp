#pragma once

// Structured grids on the torus [0,1]^d and the truncated strip
// [-L,L] x T^{d-1}, plus the flat field container. Axis 0 is x1. Torus axes
// use midpoint cells of measure dx; the bounded strip axis uses trapezoid
// weights (half cells at the two ends).

#include <array>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "rarewave/core.hpp"

namespace rarewave {

struct Grid {
    int d = 1;
    std::array<int, 3> n{1, 1, 1};
    std::array<Real, 3> x0{0.0, 0.0, 0.0};
    std::array<Real, 3> dx{1.0, 1.0, 1.0};
    std::array<bool, 3> periodic{true, true, true};

    static bool power_of_two(int v) { return v > 0 && (v & (v - 1)) == 0; }

    // T^d with n points per axis, period 1.
    static Grid torus(int d, int n) {
        if (d < 1 || d > 3) throw std::domain_error("Grid::torus: d must be 1..3");
        if (n < 16 || !power_of_two(n))
            throw std::domain_error("Grid::torus: n must be a power of two >= 16");
        Grid g;
        g.d = d;
        for (int a = 0; a < d; ++a) {
            g.n[a] = n;
            g.dx[a] = 1.0 / n;
            g.periodic[a] = true;
        }
        return g;
    }

    // [-L,L] x T^{d-1}; n1 points along x1 inclusive of both ends,
    // n_transverse per periodic axis.
    static Grid strip(Real L, int n1, int d, int n_transverse) {
        if (d < 1 || d > 3) throw std::domain_error("Grid::strip: d must be 1..3");
        if (n1 < 8) throw std::domain_error("Grid::strip: n1 too small");
        Grid g;
        g.d = d;
        g.n[0] = n1;
        g.x0[0] = -L;
        g.dx[0] = 2.0 * L / (n1 - 1);
        g.periodic[0] = false;
        for (int a = 1; a < d; ++a) {
            if (n_transverse < 16 || !power_of_two(n_transverse))
                throw std::domain_error("Grid::strip: transverse n must be a power of two >= 16");
            g.n[a] = n_transverse;
            g.dx[a] = 1.0 / n_transverse;
            g.periodic[a] = true;
        }
        return g;
    }

    std::size_t size() const {
        return static_cast<std::size_t>(n[0]) * static_cast<std::size_t>(n[1]) *
               static_cast<std::size_t>(n[2]);
    }
    std::size_t idx(int i, int j = 0, int k = 0) const {
        return (static_cast<std::size_t>(i) * n[1] + j) * n[2] + k;
    }
    Real x(int axis, int i) const { return x0[axis] + dx[axis] * i; }
    Real half_length() const { return -x0[0]; }

    // Quadrature weight of one cell (product over axes).
    Real cell_weight(int i, int j = 0, int k = 0) const {
        Real w = 1.0;
        const int id[3] = {i, j, k};
        for (int a = 0; a < d; ++a) {
            Real wa = dx[a];
            if (!periodic[a] && (id[a] == 0 || id[a] == n[a] - 1)) wa *= 0.5;
            w *= wa;
        }
        return w;
    }

    bool same_shape(const Grid& o) const {
        return d == o.d && n == o.n && x0 == o.x0 && dx == o.dx && periodic == o.periodic;
    }
};

using Field = std::vector<double>;

inline Field make_field(const Grid& g, double fill = 0.0) { return Field(g.size(), fill); }

// Density + momentum at one time level.
struct FlowState {
    Grid grid;
    Real t = 0.0;
    Field rho;
    std::array<Field, 3> mom;

    static FlowState zeros(const Grid& g) {
        FlowState s;
        s.grid = g;
        s.rho = make_field(g);
        for (int a = 0; a < g.d; ++a) s.mom[a] = make_field(g);
        return s;
    }
};

}  // namespace rarewave

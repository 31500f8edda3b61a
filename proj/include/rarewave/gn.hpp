#pragma once

// Interpolation-inequality toolkit on the strip. A function that is periodic
// transversally but merely integrable along x1 does not satisfy the plain
// 3-d Gagliardo-Nirenberg inequality (a compactly supported 1-d bump is the
// standard counterexample); splitting off the transverse means repairs it.
//
// Decomposition by successive transverse averaging:
//   u1(x1)      = mean over (x2,x3),
//   u2(x1,x2)   = mean over x3, minus u1,
//   u3          = remainder.
// The parts reconstruct u exactly and are mutually L2-orthogonal.

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "rarewave/norms.hpp"

namespace rarewave {

struct GNDecomposition {
    Field u1_part, u2_part, u3_part;  // all on the original grid
};

inline GNDecomposition gn_decompose(const Field& f, const Grid& g) {
    GNDecomposition out;
    out.u1_part = make_field(g);
    out.u2_part = make_field(g);
    out.u3_part = make_field(g);
    const int n0 = g.n[0], n1 = g.n[1], n2 = g.n[2];
    for (int i = 0; i < n0; ++i) {
        // x3-means per (x1,x2), then the full transverse mean
        std::vector<double> m3(n1, 0.0);
        for (int j = 0; j < n1; ++j) {
            std::vector<double> col(n2);
            for (int k = 0; k < n2; ++k) col[k] = f[g.idx(i, j, k)];
            m3[j] = pairwise_sum(col) / n2;
        }
        const double m = pairwise_sum(m3) / n1;
        for (int j = 0; j < n1; ++j)
            for (int k = 0; k < n2; ++k) {
                const std::size_t q = g.idx(i, j, k);
                out.u1_part[q] = m;
                out.u2_part[q] = m3[j] - m;
                out.u3_part[q] = f[q] - m3[j];
            }
    }
    return out;
}

// theta_k from the dimensional relation
//   1/p = j/k + (1/r - m/k) theta + (1 - theta)/q.
inline Real gn_theta(int j, int k, int m, Real p, Real q, Real r) {
    const Real ip = std::isinf(p) ? 0.0 : 1.0 / p;
    const Real iq = std::isinf(q) ? 0.0 : 1.0 / q;
    const Real ir = std::isinf(r) ? 0.0 : 1.0 / r;
    const Real den = ir - static_cast<Real>(m) / k - iq;
    if (den == 0.0) throw std::domain_error("gn_theta: degenerate exponent relation");
    return (ip - static_cast<Real>(j) / k - iq) / den;
}

struct GNRatio {
    Real lhs, rhs, ratio;
    std::array<Real, 3> theta;
};

// Ratio ||grad^j u||_p / sum_k ||grad^m u||_r^{theta_k} ||u||_q^{1-theta_k}.
inline GNRatio gn_inequality_check(const Field& f, const Grid& g, int j, int m, Real p, Real q,
                                   Real r) {
    if (!(j >= 0 && j < m)) throw std::domain_error("gn_inequality_check: need 0 <= j < m");
    GNRatio out{};
    for (int k = 1; k <= 3; ++k) {
        const Real th = gn_theta(j, k, m, p, q, r);
        if (!(th >= static_cast<Real>(j) / m - 1e-12 && th <= 1.0 + 1e-12))
            throw std::domain_error("gn_inequality_check: exponent relation infeasible for k=" +
                                    std::to_string(k));
        out.theta[k - 1] = th;
    }
    out.lhs = seminorm(f, g, j, p);
    const Real num = seminorm(f, g, m, r);
    const Real unorm = seminorm(f, g, 0, q);
    out.rhs = 0.0;
    for (int k = 1; k <= 3; ++k)
        out.rhs += std::pow(num, out.theta[k - 1]) * std::pow(unorm, 1.0 - out.theta[k - 1]);
    out.ratio = out.lhs / out.rhs;
    return out;
}

// The sup-norm interpolation actually used downstream of the a priori bound:
//   ||u||_inf <= C ( ||grad u||^{1/2} ||u||^{1/2} + ||grad u|| + ||grad^2 u||^{3/4} ||u||^{1/4} ),
// all right-hand norms in L2. The three terms are the 1-d/2-d/3-d branches
// of the decomposition (the last with m = 2).
inline GNRatio gn_linf_ratio(const Field& f, const Grid& g) {
    GNRatio out{};
    out.theta = {0.5, 1.0, 0.75};
    out.lhs = seminorm(f, g, 0, std::numeric_limits<Real>::infinity());
    const Real u0 = seminorm(f, g, 0, 2.0);
    const Real u1 = seminorm(f, g, 1, 2.0);
    const Real u2 = seminorm(f, g, 2, 2.0);
    out.rhs = std::sqrt(u1) * std::sqrt(u0) + u1 + std::pow(u2, 0.75) * std::pow(u0, 0.25);
    out.ratio = out.lhs / out.rhs;
    return out;
}

// ============================================================================
// Seeded corpus of band-limited strip fields
// ============================================================================

struct CorpusParams {
    Real L = 4.0;
    int n1 = 96;
    int nt = 32;
    int d = 3;
    int n_modes = 6;
    int max_wavenumber = 3;
    Real envelope_width_min = 0.6, envelope_width_max = 1.6;
};

// One random field: sum of transverse Fourier modes carried by Gaussian
// envelopes in x1 (integrable along the strip, periodic transversally).
inline Field corpus_field(const Grid& g, SplitMix64& rng, const CorpusParams& cp) {
    Field f = make_field(g);
    for (int mode = 0; mode < cp.n_modes; ++mode) {
        const double amp = rng.next_in(-1.0, 1.0);
        const double center = rng.next_in(-cp.L / 3.0, cp.L / 3.0);
        const double width = rng.next_in(cp.envelope_width_min, cp.envelope_width_max);
        const int k2 = static_cast<int>(rng.next_u64() % (cp.max_wavenumber + 1));
        const int k3 = static_cast<int>(rng.next_u64() % (cp.max_wavenumber + 1));
        const double ph2 = rng.next_in(0.0, 2.0 * M_PI);
        const double ph3 = rng.next_in(0.0, 2.0 * M_PI);
        for (int i = 0; i < g.n[0]; ++i) {
            const double x1 = g.x(0, i);
            const double env = amp * std::exp(-0.5 * (x1 - center) * (x1 - center) / (width * width));
            for (int j = 0; j < g.n[1]; ++j) {
                const double c2 = (g.d >= 2) ? std::cos(2.0 * M_PI * k2 * g.x(1, j) + ph2) : 1.0;
                for (int k = 0; k < g.n[2]; ++k) {
                    const double c3 = (g.d >= 3) ? std::cos(2.0 * M_PI * k3 * g.x(2, k) + ph3) : 1.0;
                    f[g.idx(i, j, k)] += env * c2 * c3;
                }
            }
        }
    }
    return f;
}

}  // namespace rarewave

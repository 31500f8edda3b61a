#pragma once

// Periodic runs on T^d: companion solutions around a constant base state,
// perturbation norms, and the exponential-decay fit. The base state's torus
// averages are conserved exactly by the flux-form scheme; the perturbations
// (v, w) keep zero mean and decay exponentially, which is what decay_rate
// measures.

#include <array>
#include <cmath>
#include <optional>
#include <vector>

#include "rarewave/cns.hpp"
#include "rarewave/fit.hpp"
#include "rarewave/norms.hpp"

namespace rarewave {

struct BaseState {
    Real rho = 1.0;
    Real u1 = 0.0;
};

inline FlowState init_periodic(const Grid& grid, const BaseState& base,
                               const PerturbationSpec& spec) {
    spec.validate();
    FlowState s = FlowState::zeros(grid);
    for (int i = 0; i < grid.n[0]; ++i)
        for (int j = 0; j < grid.n[1]; ++j)
            for (int k = 0; k < grid.n[2]; ++k) {
                const Real x[3] = {grid.x(0, i), grid.x(1, j), grid.x(2, k)};
                const std::size_t q = grid.idx(i, j, k);
                s.rho[q] = base.rho + spec.v0(x);
                if (!(s.rho[q] > kDensityFloor))
                    throw std::domain_error("init_periodic: vacuum initial density");
                s.mom[0][q] = base.rho * base.u1 + spec.w0(0, x);
                for (int a = 1; a < grid.d; ++a) s.mom[a][q] = spec.w0(a, x);
            }
    return s;
}

// Perturbation fields of a periodic state: v = rho - mean, z = u - base u.
struct PerturbationFields {
    Field v;
    std::array<Field, 3> z;
};

inline PerturbationFields perturbation_fields(const FlowState& s, const BaseState& base) {
    PerturbationFields p;
    p.v = make_field(s.grid);
    for (int a = 0; a < s.grid.d; ++a) p.z[a] = make_field(s.grid);
    const Real ubar[3] = {base.u1, 0.0, 0.0};
    for (std::size_t q = 0; q < s.rho.size(); ++q) {
        p.v[q] = s.rho[q] - base.rho;
        for (int a = 0; a < s.grid.d; ++a) p.z[a][q] = s.mom[a][q] / s.rho[q] - ubar[a];
    }
    return p;
}

enum class TorusNorm { L2, W1inf, W3inf };

inline Real perturbation_norm(const FlowState& s, const BaseState& base, TorusNorm which) {
    const auto p = perturbation_fields(s, base);
    int k = 0;
    Real pn = 2.0;
    switch (which) {
        case TorusNorm::L2: k = 0; pn = 2.0; break;
        case TorusNorm::W1inf: k = 1; pn = std::numeric_limits<Real>::infinity(); break;
        case TorusNorm::W3inf: k = 3; pn = std::numeric_limits<Real>::infinity(); break;
    }
    Real acc = grid_norm(p.v, s.grid, k, pn);
    for (int a = 0; a < s.grid.d; ++a) acc += grid_norm(p.z[a], s.grid, k, pn);
    return acc;
}

struct TorusTrajectory {
    std::vector<double> t;
    std::vector<double> l2, w1inf, w3inf;
    std::array<Real, 4> totals_initial{}, totals_final{};
};

// Runs to t_final, sampling perturbation norms at the given stride.
inline TorusTrajectory run_torus(FlowState initial, const BaseState& base, const PressureLaw& law,
                                 const ViscousParams& visc, Real t_final, Real sample_dt,
                                 Real cfl = 0.4) {
    CnsSolver solver(std::move(initial), law, visc, cfl);
    TorusTrajectory traj;
    traj.totals_initial = solver.conserved_totals();
    const int nsamp = static_cast<int>(std::round(t_final / sample_dt));
    for (int s = 0; s <= nsamp; ++s) {
        const Real target = s * sample_dt;
        if (target > 0.0) solver.advance_to(target);
        traj.t.push_back(solver.state().t);
        traj.l2.push_back(perturbation_norm(solver.state(), base, TorusNorm::L2));
        traj.w1inf.push_back(perturbation_norm(solver.state(), base, TorusNorm::W1inf));
        traj.w3inf.push_back(perturbation_norm(solver.state(), base, TorusNorm::W3inf));
    }
    traj.totals_final = solver.conserved_totals();
    return traj;
}

struct DecayFit {
    Real alpha = 0.0;     // decay rate estimate: norm ~ C exp(-2 alpha t)
    Real residual = 0.0;  // RMS log-space misfit
    bool degenerate = false;
    std::string note;
};

// Fits log(norm) vs t on the post-transient window. Preconditions: the norm
// must fall through at least 3 decades above the round-off floor and the
// windowed tail must be monotone up to small wiggles.
inline DecayFit decay_rate(const std::vector<double>& t, const std::vector<double>& norm) {
    if (t.size() != norm.size() || t.size() < 10) throw FitError("decay_rate: too few samples");
    double peak = 0.0;
    for (double v : norm) peak = std::max(peak, v);
    if (peak < 1e-13) {
        DecayFit f;
        f.degenerate = true;
        f.note = "degenerate, decay vacuous";
        return f;
    }
    const double floor = std::max(1e-13, 1e-13 * peak);
    // window: skip the leading transient (first 10% of the time range),
    // stop before the round-off floor
    const double t_lo = t.front() + 0.10 * (t.back() - t.front());
    std::vector<double> tw, vw;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] < t_lo) continue;
        if (norm[i] <= 30.0 * floor) break;
        tw.push_back(t[i]);
        vw.push_back(norm[i]);
    }
    if (tw.size() < 8) throw FitError("decay_rate: window too short");
    if (!(vw.front() / vw.back() >= 1e3))
        throw FitError("decay_rate: norm fell less than 3 decades in the fit window");
    for (std::size_t i = 1; i < vw.size(); ++i)
        if (vw[i] > 1.5 * vw[i - 1])
            throw FitError("decay_rate: non-monotone tail (under-resolved)");
    const auto fit = fit_rate(tw, vw, DecayModel::Exponential);
    DecayFit out;
    out.alpha = -0.5 * fit.fitted_param;  // norm ~ exp(-2 alpha t)
    out.residual = fit.residual;
    return out;
}

}  // namespace rarewave

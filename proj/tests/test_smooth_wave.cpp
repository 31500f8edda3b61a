#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "rarewave/smooth_wave.hpp"
#include "support/oracles.hpp"

using namespace rarewave;

namespace {

SmoothWaveParams suite_wave(double gamma = 1.4, double rho_plus = 3.0) {
    PressureLaw law(gamma);
    return SmoothWaveParams(complete_end_states(1.0, 0.0, rho_plus, law));
}

std::vector<double> log_times(double a, double b, int n) {
    std::vector<double> t(n);
    for (int i = 0; i < n; ++i) t[i] = a * std::pow(b / a, double(i) / (n - 1));
    return t;
}

}  // namespace

TEST_CASE("Burgers solution via characteristics") {
    auto prm = suite_wave();
    const auto& s = prm.states;

    SECTION("t = 0 returns the initial profile exactly") {
        for (double x : {-7.0, -0.3, 0.0, 1.1, 9.0})
            CHECK(burgers_smooth(x, 0.0, prm) == Catch::Approx(prm.w0(x)).margin(1e-15));
    }
    SECTION("tanh saturation at the window edges") {
        for (double t : {0.5, 3.0, 50.0}) {
            const double X = s.lambda2_plus * t + 40.0;
            CHECK(std::abs(burgers_smooth(-X, t, prm) - s.lambda2_minus) < 1e-10);
            CHECK(std::abs(burgers_smooth(X, t, prm) - s.lambda2_plus) < 1e-10);
        }
    }
    SECTION("characteristic through the origin keeps the midpoint value") {
        const double mid = 0.5 * (s.lambda2_minus + s.lambda2_plus);
        for (double t : {0.1, 1.0, 25.0})
            CHECK(burgers_smooth(mid * t, t, prm) == Catch::Approx(mid).margin(1e-11));
    }
    SECTION("PDE residual with an independent time derivative") {
        // d/dt by centered difference, d/dx exact: catches formula errors
        const double dt = 1e-5;
        for (double t : {0.4, 2.0, 11.0}) {
            for (double x : {-1.0, 0.2, t * s.lambda2_plus * 0.8, t * s.lambda2_plus}) {
                const double wdot =
                    (burgers_smooth(x, t + dt, prm) - burgers_smooth(x, t - dt, prm)) / (2 * dt);
                const auto jet = burgers_jet(x, t, prm);
                CHECK(std::abs(wdot + jet.w * jet.wx) < 1e-9);
            }
        }
    }
    SECTION("iteration cap raises a convergence error with residual") {
        SmoothWaveParams tight(prm.states, 1e-14, 1);
        CHECK_THROWS_AS(burgers_smooth(0.37, 5.0, tight), ConvergenceError);
    }
}

TEST_CASE("smooth wave sampling inverts the defining relations") {
    SECTION("end-state consistency far left") {
        auto prm = suite_wave();
        const auto v = sample_smooth_wave(-(prm.states.lambda2_plus * 2.0 + 40.0), 2.0, prm);
        CHECK(v.rho_r == Catch::Approx(prm.states.rho_minus).epsilon(1e-12));
        CHECK(v.u1_r == Catch::Approx(prm.states.u1_minus).margin(1e-11));
        CHECK(std::abs(v.sigma) < 1e-12);
        CHECK(std::abs(v.eta) < 1e-12);
    }
    SECTION("isothermal branch closed form") {
        auto prm = suite_wave(1.0, std::exp(0.8));
        for (double x : {-3.0, 0.0, 0.7, 2.5}) {
            const double t = 1.7;
            const auto v = sample_smooth_wave(x, t, prm);
            CHECK(v.rho_r ==
                  Catch::Approx(std::exp(v.omega - prm.states.z2 - 1.0)).epsilon(1e-13));
        }
    }
    SECTION("back-substitution residuals") {
        for (double g : {1.0, 1.4, 2.0}) {
            auto prm = suite_wave(g, 2.0);
            const auto& s = prm.states;
            for (double t : {0.0, 1.0, 8.0})
                for (int i = 0; i <= 50; ++i) {
                    const double x = (s.lambda2_minus * t - 15.0) +
                                     ((s.lambda2_plus - s.lambda2_minus) * t + 30.0) * i / 50.0;
                    const auto v = sample_smooth_wave(x, t, prm);
                    const double r1 = v.u1_r + s.law.sound_speed(v.rho_r) - v.omega;
                    const double r2 =
                        (v.u1_r - s.law.invariant_integral(v.rho_r)) - s.z2;
                    CHECK(std::abs(r1) < 1e-10);
                    CHECK(std::abs(r2) < 1e-10);
                }
        }
    }
    SECTION("agrees with a bisection oracle on the state map") {
        for (double g : {1.0, 1.4, 2.0}) {
            auto prm = suite_wave(g, 2.4);
            const auto& s = prm.states;
            for (double x : {-2.0, 0.0, 1.3, 4.0}) {
                const double t = 3.0;
                const auto v = sample_smooth_wave(x, t, prm);
                const double rho_oracle = oracles::bisect(
                    [&](double rho) {
                        return s.law.sound_speed(rho) + s.law.invariant_integral(rho) -
                               (v.omega - s.z2);
                    },
                    0.5 * s.rho_minus, 2.0 * s.rho_plus, 1e-15);
                CHECK(v.rho_r == Catch::Approx(rho_oracle).epsilon(1e-11));
            }
        }
    }
}

TEST_CASE("exact derivatives: signs, integral identity, bounded ratio") {
    auto prm = suite_wave();
    const auto& s = prm.states;
    const double t = 6.0;

    SECTION("both first derivatives strictly positive on a 1e4-point grid") {
        const double X = s.lambda2_plus * t + 40.0;
        double ratio_max = 0.0;
        for (int i = 0; i < 10000; ++i) {
            const double x = -X + 2.0 * X * i / 9999.0;
            const auto jet = smooth_wave_jet(x, t, prm);
            REQUIRE(jet.rho_x[0] > 0.0);
            REQUIRE(jet.u1_x[0] > 0.0);
            ratio_max = std::max(ratio_max, std::abs(jet.u1_x[1]) / jet.u1_x[0]);
        }
        // |d11 u| <= C d1 u with finite C
        CHECK(std::isfinite(ratio_max));
        CHECK(ratio_max > 0.0);
    }

    SECTION("fundamental theorem of calculus across the wave") {
        const double X = s.lambda2_plus * t + 40.0;
        const double integral = oracles::adaptive_simpson(
            [&](double x) { return smooth_wave_jet(x, t, prm).u1_x[0]; }, -X, X, 1e-11);
        CHECK(integral == Catch::Approx(s.u1_plus - s.u1_minus).margin(1e-8));
        const double integral_rho = oracles::adaptive_simpson(
            [&](double x) { return smooth_wave_jet(x, t, prm).rho_x[0]; }, -X, X, 1e-11);
        CHECK(integral_rho == Catch::Approx(s.rho_plus - s.rho_minus).margin(1e-8));
    }

    SECTION("Richardson cross-check of exact derivatives") {
        for (double x : {-4.0, 0.0, 2.5, 9.0}) {
            const auto jet = smooth_wave_jet(x, t, prm);
            auto rho_at = [&](double xx) { return sample_smooth_wave(xx, t, prm).rho_r; };
            auto u_at = [&](double xx) { return sample_smooth_wave(xx, t, prm).u1_r; };
            for (double h : {1e-3, 5e-4}) {
                const double fd1 = (rho_at(x + h) - rho_at(x - h)) / (2 * h);
                CHECK(std::abs(fd1 - jet.rho_x[0]) < 2.0 * h * h);
                const double fd2 = (u_at(x + h) - 2.0 * u_at(x) + u_at(x - h)) / (h * h);
                CHECK(std::abs(fd2 - jet.u1_x[1]) < 200.0 * h * h + 1e-8);
            }
            // third derivative at one step size, looser bound
            const double h = 2e-3;
            const double fd3 = (-rho_at(x - 2 * h) + 2 * rho_at(x - h) - 2 * rho_at(x + h) +
                                rho_at(x + 2 * h)) /
                               (2 * h * h * h);
            CHECK(std::abs(fd3 - jet.rho_x[2]) < 5e3 * h * h + 1e-6);
            // time derivative
            const double dtau = 1e-4;
            const double fdt =
                (sample_smooth_wave(x, t + dtau, prm).rho_r -
                 sample_smooth_wave(x, t - dtau, prm).rho_r) /
                (2 * dtau);
            CHECK(std::abs(fdt - jet.rho_t) < 1e-6);
        }
    }

    SECTION("order range is validated") {
        CHECK_THROWS_AS(wave_derivatives(0.0, 1.0, prm, 0), std::domain_error);
        CHECK_THROWS_AS(wave_derivatives(0.0, 1.0, prm, 4), std::domain_error);
    }
}

TEST_CASE("smooth wave solves the 1-d Euler system pointwise") {
    for (double g : {1.0, 1.4, 3.0}) {
        auto prm = suite_wave(g, 2.0);
        const auto& s = prm.states;
        for (double t : {0.0, 1.0, 20.0}) {
            const double X = s.lambda2_plus * t + 40.0;
            for (int i = 0; i < 2000; ++i) {
                const double x = -X + 2.0 * X * i / 1999.0;
                auto [mass, mom] = euler_residuals(x, t, prm);
                REQUIRE(std::abs(mass) < 1e-8);
                REQUIRE(std::abs(mom) < 1e-8);
            }
        }
    }
}

TEST_CASE("weights sigma and eta: range, monotonicity, algebraic bound") {
    auto prm = suite_wave();
    // Strict interior signs are only representable where the tanh increment
    // clears double rounding, i.e. within ~15 units of the extreme
    // characteristics; outside the weights saturate to exactly 0 and 1.
    for (double t : {0.0, 2.0, 30.0}) {
        const double a = prm.states.lambda2_minus * t - 14.0;
        const double b = prm.states.lambda2_plus * t + 14.0;
        for (int i = 0; i < 800; ++i) {
            const double x = a + (b - a) * i / 799.0;
            const auto jet = smooth_wave_jet(x, t, prm);
            REQUIRE(jet.v.sigma > 0.0);
            REQUIRE(jet.v.sigma < 1.0);
            REQUIRE(jet.v.eta > 0.0);
            REQUIRE(jet.v.eta < 1.0);
            REQUIRE(jet.sigma_x[0] > 0.0);
            REQUIRE(jet.eta_x[0] > 0.0);
            REQUIRE(jet.v.sigma * (1.0 - jet.v.sigma) <= 0.25);
        }
        // outside that zone the weights stay inside [0,1]
        const double X = prm.states.lambda2_plus * t + 38.0;
        for (double x : {-X, X}) {
            const auto v = sample_smooth_wave(x, t, prm);
            REQUIRE(v.sigma >= 0.0);
            REQUIRE(v.sigma <= 1.0);
            REQUIRE(v.eta >= 0.0);
            REQUIRE(v.eta <= 1.0);
        }
    }
    // sup-norm of sigma(1-sigma) stays below the algebraic cap for all t
    for (double t : {0.0, 1.0, 10.0, 100.0}) {
        const double inf_norm =
            weight_product_norm(std::numeric_limits<double>::infinity(), t, prm);
        CHECK(inf_norm <= 0.25 + 1e-12);
    }
}

TEST_CASE("gradient decay rates across p") {
    auto prm = suite_wave();  // wave strength 2 so the fit window is clean
    const auto times = log_times(10.0, 1000.0, 14);

    const auto rep_inf = wave_decay_report(std::numeric_limits<double>::infinity(), times, prm);
    CHECK(rep_inf.fitted_param == Catch::Approx(-1.0).margin(0.05));

    const auto rep_2 = wave_decay_report(2.0, times, prm);
    CHECK(rep_2.fitted_param == Catch::Approx(-0.5).margin(0.05));

    const auto rep_1 = wave_decay_report(1.0, times, prm);
    CHECK(rep_1.fitted_param == Catch::Approx(0.0).margin(0.05));
    // total variation is conserved: the L1 norm is the sum of the jumps
    const double tv =
        (prm.states.rho_plus - prm.states.rho_minus) + (prm.states.u1_plus - prm.states.u1_minus);
    for (double v : rep_1.value) CHECK(v == Catch::Approx(tv).epsilon(1e-6));

    CHECK_THROWS_AS(wave_decay_report(2.0, std::vector<double>{1, 2, 3}, prm), FitError);
}

TEST_CASE("weight growth rates and strength scaling") {
    auto prm = suite_wave();
    const auto times = log_times(10.0, 1000.0, 14);

    const auto rep = weight_decay_report(1.0, times, prm);
    CHECK(rep.product.fitted_param == Catch::Approx(1.0).margin(0.1));

    // halving the wave strength halves sup_t ||sigma-eta||_1/(1+t) within 20%
    auto strong = suite_wave(1.4, 2.0);  // strength 1
    auto weak = suite_wave(1.4, 1.5);    // strength 1/2
    const auto probe_times = log_times(1.0, 300.0, 10);
    const double q_strong = weight_gap_sup_quotient(strong, probe_times);
    const double q_weak = weight_gap_sup_quotient(weak, probe_times);
    CHECK(q_strong / q_weak == Catch::Approx(2.0).margin(0.4));
}

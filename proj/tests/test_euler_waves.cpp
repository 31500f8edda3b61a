#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "rarewave/euler_waves.hpp"
#include "support/oracles.hpp"

using namespace rarewave;

TEST_CASE("characteristic speeds at reference states") {
    {
        auto [l1, l2] = char_speeds(1.0, 3.0, PressureLaw(1.0));
        CHECK(l1 == Catch::Approx(2.0).margin(1e-15));
        CHECK(l2 == Catch::Approx(4.0).margin(1e-15));
    }
    {
        auto [l1, l2] = char_speeds(1.0, 0.0, PressureLaw(2.0));
        CHECK(l1 == Catch::Approx(-std::sqrt(2.0)).margin(1e-15));
        CHECK(l2 == Catch::Approx(std::sqrt(2.0)).margin(1e-15));
    }
    {
        // p'(rho) = 3 rho^2 at rho = 4 -> sqrt(48)
        auto [l1, l2] = char_speeds(4.0, 0.0, PressureLaw(3.0));
        CHECK(l2 == Catch::Approx(std::sqrt(48.0)).epsilon(1e-15));
        CHECK(l1 == Catch::Approx(-std::sqrt(48.0)).epsilon(1e-15));
    }
    CHECK_THROWS_AS(char_speeds(0.0, 0.0, PressureLaw(1.4)), std::domain_error);
    CHECK_THROWS_AS(char_speeds(-1.0, 0.0, PressureLaw(1.4)), std::domain_error);
}

TEST_CASE("Riemann invariants: closed forms") {
    for (double g : {1.0, 1.4, 2.0, 3.0}) {
        auto [z1, z2] = riemann_invariants(1.0, 5.0, PressureLaw(g));
        CHECK(z1 == Catch::Approx(5.0).margin(1e-15));  // empty integral
        CHECK(z2 == Catch::Approx(5.0).margin(1e-15));
    }
    {
        auto [z1, z2] = riemann_invariants(std::exp(1.0), 0.0, PressureLaw(1.0));
        CHECK(z1 == Catch::Approx(1.0).epsilon(1e-14));
        CHECK(z2 == Catch::Approx(-1.0).epsilon(1e-14));
    }
    {
        // gamma = 3: sqrt(p'(s))/s = sqrt(3), so A(2) = sqrt(3)
        auto [z1, z2] = riemann_invariants(2.0, 0.0, PressureLaw(3.0));
        CHECK(z1 == Catch::Approx(std::sqrt(3.0)).epsilon(1e-14));
        CHECK(z2 == Catch::Approx(-std::sqrt(3.0)).epsilon(1e-14));
    }
}

TEST_CASE("invariant integral equals independent quadrature") {
    for (double g : {1.0, 1.4, 2.0, 3.0}) {
        PressureLaw law(g);
        for (double rho : {0.1, 0.35, 0.9, 1.7, 4.0, 10.0}) {
            const double exact = law.invariant_integral(rho);
            const double quad = oracles::adaptive_simpson(
                [&](double s) { return std::sqrt(law.dp(s)) / s; }, 1.0, rho, 1e-13);
            CHECK(exact == Catch::Approx(quad).margin(1e-10));
        }
    }
}

TEST_CASE("structural identities of the invariants") {
    SplitMix64 rng(20240901u);
    for (int trial = 0; trial < 200; ++trial) {
        const double g = 1.0 + 2.5 * rng.next_unit();
        PressureLaw law(g);
        const double rho = 0.1 + 9.9 * rng.next_unit();
        const double u = -3.0 + 6.0 * rng.next_unit();
        auto [l1, l2] = char_speeds(rho, u, law);
        CHECK(l1 < l2);
        auto [z1, z2] = riemann_invariants(rho, u, law);
        CHECK(z2 - z1 == Catch::Approx(-2.0 * law.invariant_integral(rho)).margin(1e-12));
    }
}

TEST_CASE("end-state completion pins the shared invariant") {
    {
        // gamma = 1: u+ = ln(rho+/rho-)
        auto s = complete_end_states(1.0, 0.0, std::exp(1.0), PressureLaw(1.0));
        CHECK(s.u1_plus == Catch::Approx(1.0).epsilon(1e-14));
    }
    {
        // degenerate wave: u+ -> u- as rho+ -> rho-
        for (double h : {1e-3, 1e-6, 1e-9}) {
            auto s = complete_end_states(1.0, 0.7, 1.0 + h, PressureLaw(1.4));
            CHECK(std::abs(s.u1_plus - 0.7) < 2.0 * std::sqrt(1.4) * h);
        }
    }
    SplitMix64 rng(77123u);
    for (int trial = 0; trial < 200; ++trial) {
        const double g = (trial % 5 == 0) ? 1.0 : 1.0 + 2.0 * rng.next_unit();
        PressureLaw law(g);
        const double rm = 0.2 + 2.0 * rng.next_unit();
        const double rp = rm + 0.01 + 3.0 * rng.next_unit();
        const double um = -2.0 + 4.0 * rng.next_unit();
        auto s = complete_end_states(rm, um, rp, law);
        const auto zi_m = riemann_invariants(rm, um, law);
        const auto zi_p = riemann_invariants(rp, s.u1_plus, law);
        CHECK(zi_p.z2 == Catch::Approx(zi_m.z2).margin(1e-13 * (1.0 + std::abs(zi_m.z2))));
        CHECK(s.lambda2_minus < s.lambda2_plus);
    }
    CHECK_THROWS_AS(complete_end_states(2.0, 0.0, 1.0, PressureLaw(1.4)), std::invalid_argument);
    CHECK_THROWS_AS(complete_end_states(1.0, 0.0, 1.0, PressureLaw(1.4)), std::invalid_argument);
}

TEST_CASE("centered fan: constant regions, back-substitution, monotonicity") {
    for (double g : {1.0, 1.4, 3.0}) {
        PressureLaw law(g);
        auto s = complete_end_states(1.0, 0.0, 2.5, law);
        const double t = 2.0;

        CHECK_THROWS_AS(centered_fan(0.0, 0.0, s), std::domain_error);
        CHECK_THROWS_AS(centered_fan(0.0, -1.0, s), std::domain_error);

        // constant regions
        auto left = centered_fan((s.lambda2_minus - 1.0) * t, t, s);
        CHECK(left.rho == s.rho_minus);
        CHECK(left.u1 == s.u1_minus);
        auto right = centered_fan((s.lambda2_plus + 1.0) * t, t, s);
        CHECK(right.rho == s.rho_plus);
        CHECK(right.u1 == s.u1_plus);

        // interior: both defining relations hold to 1e-12 relative
        double prev_rho = 0.0, prev_u = -1e300;
        for (int i = 0; i <= 400; ++i) {
            const double xi =
                s.lambda2_minus - 0.1 + (s.lambda2_plus - s.lambda2_minus + 0.2) * i / 400.0;
            auto pt = centered_fan(xi * t, t, s);
            const double lam2 = pt.u1 + law.sound_speed(pt.rho);
            const double z2 = riemann_invariants(pt.rho, pt.u1, law).z2;
            const double want = fan_speed(xi, s);
            CHECK(std::abs(lam2 - want) <= 1e-12 * (1.0 + std::abs(want)));
            CHECK(std::abs(z2 - s.z2) <= 1e-12 * (1.0 + std::abs(s.z2)));
            // monotone and continuous across the corners
            CHECK(pt.rho >= prev_rho - 1e-13);
            CHECK(pt.u1 >= prev_u - 1e-13);
            if (i > 0) {
                CHECK(pt.rho - prev_rho < 0.02);  // no jumps on a fine grid
            }
            prev_rho = pt.rho;
            prev_u = pt.u1;
        }
    }
}

TEST_CASE("fan interior agrees with a guarded-root oracle") {
    // Independent route: solve lambda2(rho, u(rho)) = xi by bisection on rho,
    // with u(rho) from the Z2 relation.
    for (double g : {1.0, 1.4, 2.0}) {
        PressureLaw law(g);
        auto s = complete_end_states(0.8, -0.3, 2.2, law);
        const double t = 3.7;
        for (int i = 1; i < 12; ++i) {
            const double xi =
                s.lambda2_minus + (s.lambda2_plus - s.lambda2_minus) * i / 12.0;
            auto pt = centered_fan(xi * t, t, s);
            const double rho_oracle = oracles::bisect(
                [&](double rho) {
                    const double u = s.z2 + law.invariant_integral(rho);
                    return u + law.sound_speed(rho) - xi;
                },
                0.5 * s.rho_minus, 2.0 * s.rho_plus, 1e-15);
            CHECK(pt.rho == Catch::Approx(rho_oracle).epsilon(1e-10));
        }
    }
}

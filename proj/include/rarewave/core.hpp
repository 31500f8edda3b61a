#pragma once

// Shared basics: error types for the contract failures the library can hit,
// deterministic floating-point reductions, and a deterministic RNG.

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace rarewave {

using Real = double;

// Densities below this are treated as vacuum (inputs are assumed away from it).
inline constexpr Real kDensityFloor = 1e-12;

// ============================================================================
// Errors
// ============================================================================

struct ConvergenceError : std::runtime_error {
    double last_residual;
    ConvergenceError(const std::string& what, double resid)
        : std::runtime_error(what + " (last residual " + std::to_string(resid) + ")"),
          last_residual(resid) {}
};

struct VacuumError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InstabilityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline void require_positive_density(Real rho, const char* where) {
    if (!(rho > kDensityFloor))
        throw std::domain_error(std::string(where) + ": non-positive density " + std::to_string(rho));
}

// ============================================================================
// Deterministic reductions
// ============================================================================

// Pairwise summation over a contiguous range. Fixed recursion shape, so the
// result depends only on the data, never on chunking or thread count.
inline double pairwise_sum(std::span<const double> v) {
    if (v.size() <= 16) {
        double s = 0.0;
        for (double x : v) s += x;
        return s;
    }
    const std::size_t half = v.size() / 2;
    return pairwise_sum(v.subspan(0, half)) + pairwise_sum(v.subspan(half));
}

inline double pairwise_sum(const std::vector<double>& v) {
    return pairwise_sum(std::span<const double>(v.data(), v.size()));
}

// ============================================================================
// Deterministic RNG (splitmix64); std distributions are not portable across
// standard libraries, so corpus generation maps raw bits itself.
// ============================================================================

struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    // uniform in [0,1)
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
    // uniform in [a,b)
    double next_in(double a, double b) { return a + (b - a) * next_unit(); }
};

}  // namespace rarewave

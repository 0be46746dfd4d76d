#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "srnoise/params.hpp"

namespace srnoise::checks {

struct CheckResult {
    std::string name;
    double max_rel_err = 0.0;  // measured worst error or margin, check-specific
    bool pass = false;
    std::string detail;
};

// |a - b| relative to the larger magnitude; 0 when both vanish.
double rel_err(double a, double b);

// Random valid below-threshold parameter draw (rates bounded so that double
// precision keeps the two spectral routes within the 1e-9 comparison band).
LaserParams random_params(std::mt19937_64& rng);

// Closed-form photon variance equals n(n+1) over randomized parameter sets.
CheckResult thermal_variance_identity(std::size_t n_draws, std::uint64_t seed);

// Dropping the 2 Ne Ng diffusion term breaks the n(n+1) identity by > 1%
// at the preset operating points.
CheckResult ger_variant_deviates();

// Closed forms vs spectral-matrix oracle, pointwise on default 512-point grids.
CheckResult oracle_equivalence(std::size_t n_states, std::uint64_t seed);

// Field spectrum closed form vs the 4-dim (a, a+, v, v+) system oracle.
CheckResult field_matrix_equivalence(std::size_t n_states, std::uint64_t seed);

// Closed-form photon number vs quadrature of the field spectrum, plus
// stationary-equation residuals at solved operating points.
CheckResult steady_state_consistency(std::size_t n_draws, std::uint64_t seed);

// P = 0 and Omega = 0 degenerate limits, exact to 1e-9.
CheckResult trivial_limits();

// S(omega) Hermitian positive semidefinite for randomized binary systems.
CheckResult spectral_matrix_structure(std::size_t n_states, std::uint64_t seed);

// The oracle suite behind the `verify` subcommand.
std::vector<CheckResult> run_verification(std::uint64_t seed = 20240817);

}  // namespace srnoise::checks

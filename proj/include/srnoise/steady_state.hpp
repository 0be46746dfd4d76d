#pragma once

#include <array>

#include "srnoise/params.hpp"

namespace srnoise {

// Stationary operating point of the below-threshold (LED-regime) laser.
// sigma is the mean field-polarization interaction energy, dipole_d the mean
// dipole-dipole interaction energy, both dimensionless in gamma_par units.
struct SteadyState {
    double n = 0.0;          // mean cavity photon number
    double n_e = 0.0;        // mean excited population
    double n_g = 0.0;        // mean ground population, N0 - n_e
    double inversion = 0.0;  // N = n_e - n_g
    double sigma = 0.0;      // 2*kappa*n/Omega for Omega > 0
    double dipole_d = 0.0;   // Omega*N*sigma/gamma_perp
    std::array<double, 4> residuals{};  // absolute residuals of the stationary equations
    double residual_max = 0.0;          // worst residual relative to each equation's largest term
};

// Closed-form mean photon number at fixed excited population:
//   n(Ne) = (gamma_perp/2)(Ne/N_th) / [(kappa + gamma_perp/2)(1 - N/N_th)],  N = 2 Ne - N0.
// Throws AboveThreshold once N >= N_th (1 - 1e-12).
double photon_number_given_population(double n_e, const ValidatedParams& p);

// Solves the pump/decay balance 2 kappa n(Ne) = P (N0 - Ne) - Ne by bracketed
// bisection on Ne in [0, min(N0, (N0 + N_th)/2 (1 - 1e-9))); fills sigma and
// dipole_d from the stationary relations. Throws NoBracket or AboveThreshold.
SteadyState solve_operating_point(const ValidatedParams& p);

// Absolute residuals of the four stationary equations at the given state:
//   [0] photon balance      -2 kappa n + Omega Sigma
//   [1] interaction balance -(kappa + gamma_perp/2) Sigma + 2 Omega f (n N + D + Ne)
//   [2] dipole balance      -gamma_perp D + Omega N Sigma
//   [3] energy conservation  2 kappa n - P (N0 - Ne) + Ne
std::array<double, 4> residual_report(const SteadyState& s, const ValidatedParams& p);

// Same residuals, each divided by the magnitude of its equation's largest term.
std::array<double, 4> relative_residuals(const SteadyState& s, const ValidatedParams& p);

}  // namespace srnoise

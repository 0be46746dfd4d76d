#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "srnoise/params.hpp"
#include "srnoise/steady_state.hpp"

namespace srnoise {

struct FrequencyGrid {
    std::vector<double> points;  // strictly increasing, units of gamma_par
    bool symmetric = false;      // mirrored about 0 (pairs +-w, optionally 0)

    // Uniform symmetric grid covering [-omega_max, omega_max]. Even counts use
    // half-offset points (no zero), odd counts include zero.
    static FrequencyGrid symmetric_uniform(double omega_max, std::size_t n_points);

    std::size_t size() const noexcept { return points.size(); }
    bool is_uniform(double tol = 1e-9) const;
    double spacing() const;  // throws GridMismatch when not uniform
};

enum class SpectrumKind {
    Field,
    PhotonFluct,
    SigmaFluct,
    PopulationFluct,
    PopulationFluctSimplified,
    FieldPopulationConvolution,
};

std::string to_string(SpectrumKind kind);

struct Spectrum {
    FrequencyGrid grid;
    std::vector<double> values;  // nonnegative, same length as grid
    SpectrumKind kind{};
    SteadyState state;       // operating point the spectrum was evaluated at
    ValidatedParams params;  // parameters, for closed-form re-evaluation
};

// Scalar closed forms (all even in omega).
double field_spectrum_at(const SteadyState& s, const ValidatedParams& p, double omega);
double photon_fluctuation_at(const SteadyState& s, const ValidatedParams& p, double omega);
// Throws DivisionByZeroRate when omega_rabi == 0.
double sigma_fluctuation_at(const SteadyState& s, const ValidatedParams& p, double omega);
double population_fluctuation_at(const SteadyState& s, const ValidatedParams& p, double omega);
double simplified_population_at(const SteadyState& s, const ValidatedParams& p, double omega);

// Grid evaluations of the closed forms.
Spectrum field_spectrum(const SteadyState& s, const ValidatedParams& p, const FrequencyGrid& grid);
Spectrum photon_fluctuation_spectrum(const SteadyState& s, const ValidatedParams& p,
                                     const FrequencyGrid& grid);
Spectrum sigma_fluctuation_spectrum(const SteadyState& s, const ValidatedParams& p,
                                    const FrequencyGrid& grid);
Spectrum population_fluctuation_spectrum(const SteadyState& s, const ValidatedParams& p,
                                         const FrequencyGrid& grid);
Spectrum simplified_population_spectrum(const SteadyState& s, const ValidatedParams& p,
                                        const FrequencyGrid& grid);

// Trapezoid-weighted discrete convolution (2pi)^-1 sum_k field(w - w_k) pop(w_k) dw
// on a shared uniform symmetric grid; shifted field arguments that fall outside
// the grid are evaluated by the closed form. Throws GridMismatch.
Spectrum field_population_convolution(const Spectrum& field, const Spectrum& pop);

// (2pi)^-1 integral of the spectrum over the real line, by adaptive quadrature
// on the closed form (an iterated double quadrature for the convolution kind).
double spectrum_variance(const Spectrum& spec);

struct PopulationVarianceDecomposition {
    double total;
    double pump_decay_part;        // (P Ng + Ne) / (2 (P + 1)), closed form
    double field_polarization_part;  // quadrature of the interaction-energy term
};

PopulationVarianceDecomposition population_variance_decomposition(const SteadyState& s,
                                                                  const ValidatedParams& p);

// Default evaluation window: wide enough for the population Lorentzian and the
// collective Rabi sidebands, |omega| <= max(10 gamma_P, 4 sqrt(2 Omega^2 f |N|) + 4 (kappa + gamma_perp)).
FrequencyGrid default_grid(const SteadyState& s, const ValidatedParams& p,
                           std::size_t n_points = 2048);

}  // namespace srnoise

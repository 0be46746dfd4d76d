#include "srnoise/checks.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

#include "srnoise/langevin.hpp"
#include "srnoise/presets.hpp"
#include "srnoise/spectra.hpp"
#include "srnoise/steady_state.hpp"

namespace srnoise::checks {

double rel_err(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return (scale > 0.0) ? std::abs(a - b) / scale : 0.0;
}

LaserParams random_params(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    LaserParams p;
    p.kappa = 0.5 * std::pow(400.0, u(rng));       // log-uniform in [0.5, 200]
    p.gamma_perp = 0.5 * std::pow(800.0, u(rng));  // log-uniform in [0.5, 400]
    p.omega_rabi = 0.5 * std::pow(120.0, u(rng));  // log-uniform in [0.5, 60]
    p.gamma_par = 1.0;
    p.pump = 3.0 * u(rng);
    p.n_emitters = 5 + static_cast<long long>(u(rng) * 395.0);
    p.coupling_f = 0.05 + 0.95 * u(rng);
    p.units = RateUnits::GammaPar;
    return p;
}

CheckResult thermal_variance_identity(std::size_t n_draws, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    double worst = 0.0;
    for (std::size_t i = 0; i < n_draws; ++i) {
        const auto p = validate(random_params(rng));
        const auto s = solve_operating_point(p);
        const auto grid = FrequencyGrid::symmetric_uniform(1.0, 2);  // variance ignores the grid
        const auto spec = photon_fluctuation_spectrum(s, p, grid);
        const double var = spectrum_variance(spec);
        worst = std::max(worst, rel_err(var, s.n * (s.n + 1.0)));
    }
    return {"thermal_variance_identity", worst, worst <= 1e-6,
            std::to_string(n_draws) + " randomized parameter sets, tolerance 1e-6"};
}

namespace {

double matrix_photon_variance(const SteadyState& s, const ValidatedParams& p,
                              BinaryDiffusion diffusion) {
    const auto sys = build_binary_system(s, p, diffusion);
    const auto rates = derive_rates(p);
    std::vector<double> bps;
    for (double b : {rates.gamma_p, p.kappa(), p.gamma_perp(), 2.0 * p.kappa() + p.gamma_perp()}) {
        bps.push_back(b);
        bps.push_back(-b);
    }
    const double c = (1.0 - s.inversion / rates.n_threshold) * p.kappa() * p.gamma_perp() / 2.0;
    if (c > 0.0) {
        bps.push_back(std::sqrt(c));
        bps.push_back(-std::sqrt(c));
        bps.push_back(2.0 * std::sqrt(c));
        bps.push_back(-2.0 * std::sqrt(c));
    }
    const auto integrand = [&sys](double w) { return spectral_matrix(sys, w)(0, 0).real(); };
    return num::integrate_line(integrand, 1e-9, 1e-14, bps).value / (2.0 * std::acos(-1.0));
}

}  // namespace

CheckResult ger_variant_deviates() {
    // operating points of the preset spectra family plus the superradiant
    // preset at higher pump
    std::vector<LaserParams> points;
    for (double r : presets::spectra_ratios())
        points.push_back(presets::with_ratio_and_pump(r, presets::spectra_pump));
    for (double pump : {1.0, 2.0, 3.0}) points.push_back(presets::with_ratio_and_pump(2.0, pump));

    double min_dev = std::numeric_limits<double>::infinity();
    for (const auto& lp : points) {
        const auto p = validate(lp);
        const auto s = solve_operating_point(p);
        const double var_ger = matrix_photon_variance(s, p, BinaryDiffusion::Ger);
        min_dev = std::min(min_dev, rel_err(var_ger, s.n * (s.n + 1.0)));
    }
    return {"ger_variant_deviates", min_dev, min_dev > 0.01,
            "smallest deviation from n(n+1) across preset operating points, threshold 1%"};
}

CheckResult oracle_equivalence(std::size_t n_states, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    double worst = 0.0;
    for (std::size_t i = 0; i < n_states; ++i) {
        const auto p = validate(random_params(rng));
        const auto s = solve_operating_point(p);
        const auto grid = default_grid(s, p, 512);
        const auto d2n = photon_fluctuation_spectrum(s, p, grid);
        const auto d2sig = sigma_fluctuation_spectrum(s, p, grid);
        const auto d2ne = population_fluctuation_spectrum(s, p, grid);
        const auto chain = population_spectrum_via_chain(s, p, grid);
        const auto sys = build_binary_system(s, p, BinaryDiffusion::Olm);
        for (std::size_t j = 0; j < grid.size(); ++j) {
            const auto sm = spectral_matrix(sys, grid.points[j]);
            worst = std::max(worst, rel_err(d2n.values[j], sm(0, 0).real()));
            worst = std::max(worst, rel_err(d2sig.values[j], sm(1, 1).real()));
            worst = std::max(worst, rel_err(d2ne.values[j], chain.values[j]));
        }
    }
    return {"oracle_equivalence", worst, worst <= 1e-9,
            std::to_string(n_states) + " randomized states, 512-point grids, tolerance 1e-9"};
}

CheckResult field_matrix_equivalence(std::size_t n_states, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    double worst = 0.0;
    for (std::size_t i = 0; i < n_states; ++i) {
        const auto p = validate(random_params(rng));
        const auto s = solve_operating_point(p);
        const auto grid = default_grid(s, p, 256);
        const auto sys = build_field_system(s, p);
        for (double w : grid.points) {
            const auto sm = spectral_matrix(sys, w);
            worst = std::max(worst, rel_err(field_spectrum_at(s, p, w), sm(1, 0).real()));
        }
    }
    return {"field_matrix_equivalence", worst, worst <= 1e-9,
            std::to_string(n_states) + " randomized states, tolerance 1e-9"};
}

CheckResult steady_state_consistency(std::size_t n_draws, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    double worst_quad = 0.0, worst_res = 0.0;
    for (std::size_t i = 0; i < n_draws; ++i) {
        const auto p = validate(random_params(rng));
        const auto s = solve_operating_point(p);
        worst_res = std::max(worst_res, s.residual_max);
        const auto grid = FrequencyGrid::symmetric_uniform(1.0, 2);
        const double by_quadrature = spectrum_variance(field_spectrum(s, p, grid));
        worst_quad = std::max(worst_quad, rel_err(by_quadrature, s.n));
    }
    const bool pass = worst_quad <= 1e-7 && worst_res <= 1e-9;
    return {"steady_state_consistency", std::max(worst_quad, worst_res), pass,
            "photon-number quadrature identity (1e-7) and stationary residuals (1e-9) over " +
                std::to_string(n_draws) + " draws"};
}

CheckResult trivial_limits() {
    double worst = 0.0;
    {
        LaserParams lp = presets::base();
        lp.pump = 0.0;
        const auto p = validate(lp);
        const auto s = solve_operating_point(p);
        worst = std::max({worst, std::abs(s.n), std::abs(s.n_e), std::abs(s.sigma),
                          std::abs(s.dipole_d), s.residual_max});
    }
    {
        LaserParams lp = presets::base();
        lp.omega_rabi = 0.0;
        lp.pump = 1.0;
        const auto p = validate(lp);
        const auto s = solve_operating_point(p);
        const double n0 = static_cast<double>(p.n_emitters());
        worst = std::max(worst, rel_err(s.n_e, p.pump() * n0 / (p.pump() + 1.0)));
        worst = std::max(worst, std::abs(s.n));
        const double expected_var =
            (p.pump() * s.n_g + s.n_e) / (2.0 * (p.pump() + 1.0));
        const auto grid = default_grid(s, p, 257);
        const auto pop = population_fluctuation_spectrum(s, p, grid);
        worst = std::max(worst, rel_err(spectrum_variance(pop), expected_var));
        const double gamma_p = p.pump() + 1.0;
        const double d2 = p.pump() * s.n_g + s.n_e;
        for (std::size_t j = 0; j < grid.size(); ++j) {
            const double w = grid.points[j];
            worst = std::max(worst,
                             rel_err(pop.values[j], d2 / (w * w + gamma_p * gamma_p)));
        }
    }
    return {"trivial_limits", worst, worst <= 1e-9,
            "P = 0 zero state and Omega = 0 rate-equation limit, tolerance 1e-9"};
}

CheckResult spectral_matrix_structure(std::size_t n_states, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    double worst = 0.0;
    for (std::size_t i = 0; i < n_states; ++i) {
        const auto p = validate(random_params(rng));
        const auto s = solve_operating_point(p);
        const auto sys = build_binary_system(s, p, BinaryDiffusion::Olm);
        const auto grid = default_grid(s, p, 64);
        for (double w : grid.points) {
            const auto sm = spectral_matrix(sys, w);
            double scale = 0.0;
            for (std::size_t a = 0; a < 3; ++a)
                for (std::size_t b = 0; b < 3; ++b) scale = std::max(scale, std::abs(sm(a, b)));
            for (std::size_t a = 0; a < 3; ++a) {
                for (std::size_t b = 0; b < 3; ++b)
                    worst = std::max(worst,
                                     std::abs(sm(a, b) - std::conj(sm(b, a))) / scale);
                worst = std::max(worst, std::max(0.0, -sm(a, a).real() / scale));
            }
            // principal minors of a Hermitian PSD matrix are nonnegative
            const auto m01 = sm(0, 0) * sm(1, 1) - sm(0, 1) * sm(1, 0);
            worst = std::max(worst, std::max(0.0, -m01.real() / (scale * scale)));
        }
    }
    return {"spectral_matrix_structure", worst, worst <= 1e-12,
            "Hermiticity and positivity of S(omega), tolerance 1e-12"};
}

std::vector<CheckResult> run_verification(std::uint64_t seed) {
    return {
        thermal_variance_identity(100, seed),
        ger_variant_deviates(),
        oracle_equivalence(50, seed + 1),
        field_matrix_equivalence(25, seed + 2),
        steady_state_consistency(100, seed + 3),
        trivial_limits(),
        spectral_matrix_structure(10, seed + 4),
    };
}

}  // namespace srnoise::checks

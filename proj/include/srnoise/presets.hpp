#pragma once

#include <vector>

#include "srnoise/params.hpp"

namespace srnoise::presets {

// Shared parameter set for the example plots: Omega = 34, N0 = 100, f = 1/2,
// kappa = 50, all rates in units of gamma_par. The cavity/polarization ratio
// 2 kappa / gamma_perp selects how superradiant the laser is.
inline LaserParams base() {
    LaserParams p;
    p.omega_rabi = 34.0;
    p.kappa = 50.0;
    p.gamma_perp = 50.0;
    p.gamma_par = 1.0;
    p.pump = 0.7;
    p.n_emitters = 100;
    p.coupling_f = 0.5;
    p.units = RateUnits::GammaPar;
    return p;
}

inline LaserParams with_ratio_and_pump(double sr_ratio, double pump) {
    LaserParams p = base();
    p.gamma_perp = 2.0 * p.kappa / sr_ratio;
    p.pump = pump;
    return p;
}

// field / photon-fluctuation spectra: five curves at P = 0.7
inline const std::vector<double>& spectra_ratios() {
    static const std::vector<double> r{1.0 / 5.0, 1.0 / 3.0, 1.0 / 2.0, 1.0, 2.0};
    return r;
}
inline constexpr double spectra_pump = 0.7;

// population spectra: superradiant vs non-superradiant at three pump values
inline const std::vector<double>& population_ratios() {
    static const std::vector<double> r{2.0, 1.0 / 30.0};
    return r;
}
inline const std::vector<double>& population_pumps() {
    static const std::vector<double> p{1.0, 2.0, 3.0};
    return p;
}

// population dispersion vs pump
inline constexpr double dispersion_pump_start = 0.05;
inline constexpr double dispersion_pump_stop = 3.0;
inline constexpr double dispersion_pump_step = 0.05;

}  // namespace srnoise::presets

#pragma once

#include <string>

#include "srnoise/checks.hpp"
#include "srnoise/params.hpp"
#include "srnoise/spectra.hpp"
#include "srnoise/steady_state.hpp"

namespace srnoise {

// Parses {omega_rabi, kappa, gamma_perp, gamma_par, pump, n_emitters,
// coupling_f, units}; units is optional ("gamma_par" by default) and unknown
// keys are rejected.
LaserParams params_from_json_text(const std::string& text);
LaserParams params_from_json_file(const std::string& path);

std::string steady_state_to_json(const SteadyState& s);
std::string decomposition_to_json(const PopulationVarianceDecomposition& d);
std::string checks_to_json(const std::vector<checks::CheckResult>& results);

}  // namespace srnoise

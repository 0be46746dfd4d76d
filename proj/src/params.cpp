#include "srnoise/params.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace srnoise {

ValidatedParams validate(const LaserParams& p) {
    std::vector<Violation> bad;
    const auto positive_rate = [&](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v))
            bad.push_back({"NonPositiveRate", std::string(name) + " must be finite and > 0, got " +
                                                  std::to_string(v)});
    };
    positive_rate(p.kappa, "kappa");
    positive_rate(p.gamma_perp, "gamma_perp");
    positive_rate(p.gamma_par, "gamma_par");
    if (!(p.omega_rabi >= 0.0) || !std::isfinite(p.omega_rabi))
        bad.push_back({"NonPositiveRate",
                       "omega_rabi must be finite and >= 0, got " + std::to_string(p.omega_rabi)});
    if (!(p.pump >= 0.0) || !std::isfinite(p.pump))
        bad.push_back({"NegativePump", "pump must be finite and >= 0, got " + std::to_string(p.pump)});
    if (p.n_emitters < 1)
        bad.push_back({"ZeroEmitters",
                       "n_emitters must be >= 1, got " + std::to_string(p.n_emitters)});
    if (!(p.coupling_f > 0.0 && p.coupling_f <= 1.0))
        bad.push_back({"CouplingOutOfRange",
                       "coupling_f must be in (0, 1], got " + std::to_string(p.coupling_f)});
    if (!bad.empty()) throw ValidationError(std::move(bad));

    // gamma_par is consumed by the normalization; all rates come out in units of it
    return ValidatedParams(p.omega_rabi / p.gamma_par, p.kappa / p.gamma_par,
                           p.gamma_perp / p.gamma_par, p.pump, p.n_emitters, p.coupling_f);
}

DerivedRates derive_rates(const ValidatedParams& p) {
    const double omega2f = p.omega_rabi() * p.omega_rabi() * p.coupling_f();
    const double n_th = (omega2f > 0.0)
                            ? p.kappa() * p.gamma_perp() / (2.0 * omega2f)
                            : std::numeric_limits<double>::infinity();
    const double sr = 2.0 * p.kappa() / p.gamma_perp();
    return {n_th, p.gamma_par() * (p.pump() + 1.0), sr,
            sr >= 1.0 ? SrRegime::Superradiant : SrRegime::NonSuperradiant};
}

}  // namespace srnoise

#pragma once

#include "srnoise/errors.hpp"

namespace srnoise {

enum class RateUnits { GammaPar, RadPerSec };

// Raw user-facing parameters of the two-level laser: rates may be given either
// in units of the population decay gamma_par or in rad/s (with gamma_par set).
struct LaserParams {
    double omega_rabi = 0.0;   // vacuum Rabi frequency Omega
    double kappa = 0.0;        // cavity amplitude decay
    double gamma_perp = 0.0;   // polarization decay
    double gamma_par = 1.0;    // upper-level population decay
    double pump = 0.0;         // dimensionless normalized pump P >= 0
    long long n_emitters = 0;  // total emitter count N0
    double coupling_f = 1.0;   // mean normalized coupling f in (0, 1]
    RateUnits units = RateUnits::GammaPar;
};

// Parameters normalized so gamma_par == 1; constructed only through validate().
class ValidatedParams {
public:
    double omega_rabi() const noexcept { return omega_rabi_; }
    double kappa() const noexcept { return kappa_; }
    double gamma_perp() const noexcept { return gamma_perp_; }
    double gamma_par() const noexcept { return 1.0; }
    double pump() const noexcept { return pump_; }
    long long n_emitters() const noexcept { return n_emitters_; }
    double coupling_f() const noexcept { return coupling_f_; }

    LaserParams to_params() const {
        return {omega_rabi_, kappa_, gamma_perp_, 1.0, pump_, n_emitters_, coupling_f_,
                RateUnits::GammaPar};
    }

    bool operator==(const ValidatedParams&) const = default;

private:
    friend ValidatedParams validate(const LaserParams& p);
    ValidatedParams(double omega_rabi, double kappa, double gamma_perp, double pump,
                    long long n_emitters, double coupling_f)
        : omega_rabi_(omega_rabi), kappa_(kappa), gamma_perp_(gamma_perp), pump_(pump),
          n_emitters_(n_emitters), coupling_f_(coupling_f) {}

    double omega_rabi_, kappa_, gamma_perp_, pump_;
    long long n_emitters_;
    double coupling_f_;
};

enum class SrRegime { Superradiant, NonSuperradiant };

struct DerivedRates {
    double n_threshold;  // kappa*gamma_perp / (2 Omega^2 f); +inf when Omega == 0
    double gamma_p;      // population-fluctuation decay gamma_par*(P+1)
    double sr_ratio;     // 2*kappa/gamma_perp
    SrRegime regime;     // Superradiant iff sr_ratio >= 1
};

// Normalizes to gamma_par units and reports every violated constraint at once.
ValidatedParams validate(const LaserParams& p);

DerivedRates derive_rates(const ValidatedParams& p);

}  // namespace srnoise

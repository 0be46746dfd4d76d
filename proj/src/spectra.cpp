#include "srnoise/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "srnoise/numerics.hpp"

namespace srnoise {

namespace {

// Cached combinations shared by all closed forms. inv_nth is 1/N_th with the
// Omega == 0 degenerate case folded in as 0, which makes every fluctuation
// numerator vanish term by term instead of producing inf * 0.
struct Terms {
    double k, g, w_rabi, f, n0;
    double n, ne, ng, inv, d;
    double inv_nth;   // 1/N_th (0 when Omega == 0)
    double margin;    // 1 - N/N_th
    double gamma_p;   // (P+1)
    double d2_pop;    // 2 D_NeNe = P Ng + Ne

    Terms(const SteadyState& s, const ValidatedParams& p)
        : k(p.kappa()), g(p.gamma_perp()), w_rabi(p.omega_rabi()), f(p.coupling_f()),
          n0(static_cast<double>(p.n_emitters())), n(s.n), ne(s.n_e), ng(s.n_g),
          inv(s.inversion), d(s.dipole_d) {
        const double omega2f = w_rabi * w_rabi * f;
        inv_nth = (omega2f > 0.0) ? 2.0 * omega2f / (k * g) : 0.0;
        margin = 1.0 - inv * inv_nth;
        gamma_p = p.pump() + 1.0;
        d2_pop = p.pump() * ng + ne;
    }

    double field(double w2) const {
        const double num = (k * g * g / 2.0) * ne * inv_nth;
        const double c = margin * (k * g / 2.0) - w2;
        const double b = k + g / 2.0;
        return num / (c * c + w2 * b * b);
    }

    // |det(-i w I - A)|^2 of the binary fluctuation system
    double s_total(double w2) const {
        const double b1 = k + g / 2.0;
        const double c = 2.0 * k * g * margin - w2;
        const double b2 = 2.0 * k + g;
        return (w2 + b1 * b1) * (c * c + w2 * b2 * b2);
    }

    double photon_numerator(double w2) const {
        const double t1a = 0.5 * g * g - w2 + k * g * margin;
        const double t1b = k + 1.5 * g;
        const double t1 = 2.0 * k * n * (t1a * t1a + w2 * t1b * t1b);
        const double t2 =
            (k * g / 2.0) * inv_nth * (2.0 * k * (d + ne) + g * (n0 * n + ne)) * (w2 + g * g);
        const double t3 = k * k * g * g * g * (n0 * d + 2.0 * ne * ng) * inv_nth * inv_nth;
        const double t4 =
            4.0 * k * k * n * ((k + g / 2.0) * (w2 + g * g) - k * g * g * inv * inv_nth);
        const double t5 = 2.0 * k * k * g * g * g * n0 * n * inv_nth;
        return t1 + t2 + t3 + t4 + t5;
    }

    double sigma_numerator(double w2) const {
        const double q = n * inv * inv_nth;
        const double s1 = 2.0 * k * k * k * g * q * (g * inv * inv_nth + 4.0 * k) * (w2 + g * g);
        const double s2 = (k * g / 2.0) * inv_nth *
                          (2.0 * k * d + g * n0 * n + (2.0 * k + g) * ne) * (w2 + 4.0 * k * k) *
                          (w2 + g * g);
        const double s3 = k * k * g * g * g * (w2 + 4.0 * k * k) *
                          ((n0 * d + 2.0 * ne * ng) * inv_nth * inv_nth + 2.0 * n * n0 * inv_nth);
        return s1 + s2 + s3;
    }

    // characteristic frequencies, used to seed adaptive quadrature panels
    std::vector<double> breakpoints() const {
        std::vector<double> b{gamma_p, 10.0 * gamma_p, k, g, 2.0 * k + g};
        const double c = margin * (k * g / 2.0);
        if (c > 0.0) {
            const double wc = std::sqrt(c);
            b.push_back(wc);
            b.push_back(2.0 * wc);
        }
        std::vector<double> out;
        for (double x : b) {
            out.push_back(x);
            out.push_back(-x);
        }
        return out;
    }
};

Spectrum evaluate_grid(const SteadyState& s, const ValidatedParams& p, const FrequencyGrid& grid,
                       SpectrumKind kind, const std::function<double(double)>& at) {
    Spectrum out{grid, {}, kind, s, p};
    out.values.reserve(grid.size());
    for (double w : grid.points) out.values.push_back(at(w));
    return out;
}

}  // namespace

FrequencyGrid FrequencyGrid::symmetric_uniform(double omega_max, std::size_t n_points) {
    if (!(omega_max > 0.0) || n_points < 2)
        throw InputError("BadGrid", "symmetric_uniform needs omega_max > 0 and n_points >= 2");
    FrequencyGrid grid;
    grid.symmetric = true;
    grid.points.resize(n_points);
    if (n_points % 2 == 0) {
        const double dw = 2.0 * omega_max / static_cast<double>(n_points);
        const double half = static_cast<double>(n_points) / 2.0;
        for (std::size_t i = 0; i < n_points; ++i)
            grid.points[i] = (static_cast<double>(i) - half + 0.5) * dw;
    } else {
        const double dw = 2.0 * omega_max / static_cast<double>(n_points - 1);
        const auto mid = static_cast<std::ptrdiff_t>(n_points / 2);
        for (std::size_t i = 0; i < n_points; ++i)
            grid.points[i] = static_cast<double>(static_cast<std::ptrdiff_t>(i) - mid) * dw;
    }
    return grid;
}

bool FrequencyGrid::is_uniform(double tol) const {
    if (points.size() < 2) return true;
    const double dw = points[1] - points[0];
    for (std::size_t i = 1; i + 1 < points.size(); ++i)
        if (std::abs((points[i + 1] - points[i]) - dw) > tol * std::max(1.0, std::abs(dw)))
            return false;
    return dw > 0.0;
}

double FrequencyGrid::spacing() const {
    if (points.size() < 2 || !is_uniform())
        throw NumericalError("GridMismatch", "grid is not uniform");
    return points[1] - points[0];
}

std::string to_string(SpectrumKind kind) {
    switch (kind) {
        case SpectrumKind::Field: return "field";
        case SpectrumKind::PhotonFluct: return "photon";
        case SpectrumKind::SigmaFluct: return "sigma";
        case SpectrumKind::PopulationFluct: return "population";
        case SpectrumKind::PopulationFluctSimplified: return "population-simple";
        case SpectrumKind::FieldPopulationConvolution: return "conv";
    }
    return "unknown";
}

double field_spectrum_at(const SteadyState& s, const ValidatedParams& p, double omega) {
    return Terms(s, p).field(omega * omega);
}

double photon_fluctuation_at(const SteadyState& s, const ValidatedParams& p, double omega) {
    const Terms t(s, p);
    const double w2 = omega * omega;
    return t.photon_numerator(w2) / t.s_total(w2);
}

double sigma_fluctuation_at(const SteadyState& s, const ValidatedParams& p, double omega) {
    if (p.omega_rabi() == 0.0)
        throw NumericalError("DivisionByZeroRate",
                             "sigma fluctuation spectrum undefined at omega_rabi = 0");
    const Terms t(s, p);
    const double w2 = omega * omega;
    return t.sigma_numerator(w2) / (t.w_rabi * t.w_rabi * t.s_total(w2));
}

double population_fluctuation_at(const SteadyState& s, const ValidatedParams& p, double omega) {
    const Terms t(s, p);
    const double w2 = omega * omega;
    const double lorentz = w2 + t.gamma_p * t.gamma_p;
    const double interaction =
        (t.w_rabi > 0.0) ? t.sigma_numerator(w2) / (lorentz * t.s_total(w2)) : 0.0;
    return interaction + t.d2_pop / lorentz;
}

double simplified_population_at(const SteadyState& s, const ValidatedParams& p, double omega) {
    const Terms t(s, p);
    return t.d2_pop / (omega * omega + t.gamma_p * t.gamma_p);
}

Spectrum field_spectrum(const SteadyState& s, const ValidatedParams& p, const FrequencyGrid& grid) {
    const Terms t(s, p);
    return evaluate_grid(s, p, grid, SpectrumKind::Field,
                         [&t](double w) { return t.field(w * w); });
}

Spectrum photon_fluctuation_spectrum(const SteadyState& s, const ValidatedParams& p,
                                     const FrequencyGrid& grid) {
    const Terms t(s, p);
    return evaluate_grid(s, p, grid, SpectrumKind::PhotonFluct, [&t](double w) {
        const double w2 = w * w;
        return t.photon_numerator(w2) / t.s_total(w2);
    });
}

Spectrum sigma_fluctuation_spectrum(const SteadyState& s, const ValidatedParams& p,
                                    const FrequencyGrid& grid) {
    if (p.omega_rabi() == 0.0)
        throw NumericalError("DivisionByZeroRate",
                             "sigma fluctuation spectrum undefined at omega_rabi = 0");
    const Terms t(s, p);
    return evaluate_grid(s, p, grid, SpectrumKind::SigmaFluct, [&t](double w) {
        const double w2 = w * w;
        return t.sigma_numerator(w2) / (t.w_rabi * t.w_rabi * t.s_total(w2));
    });
}

Spectrum population_fluctuation_spectrum(const SteadyState& s, const ValidatedParams& p,
                                         const FrequencyGrid& grid) {
    return evaluate_grid(s, p, grid, SpectrumKind::PopulationFluct,
                         [&s, &p](double w) { return population_fluctuation_at(s, p, w); });
}

Spectrum simplified_population_spectrum(const SteadyState& s, const ValidatedParams& p,
                                        const FrequencyGrid& grid) {
    return evaluate_grid(s, p, grid, SpectrumKind::PopulationFluctSimplified,
                         [&s, &p](double w) { return simplified_population_at(s, p, w); });
}

Spectrum field_population_convolution(const Spectrum& field, const Spectrum& pop) {
    if (field.kind != SpectrumKind::Field)
        throw InputError("WrongSpectrumKind", "convolution needs a field spectrum first");
    if (pop.kind != SpectrumKind::PopulationFluct &&
        pop.kind != SpectrumKind::PopulationFluctSimplified)
        throw InputError("WrongSpectrumKind", "convolution needs a population spectrum second");
    const auto& grid = field.grid;
    if (grid.size() != pop.grid.size() || !grid.symmetric || !pop.grid.symmetric)
        throw NumericalError("GridMismatch", "convolution needs one shared symmetric grid");
    for (std::size_t i = 0; i < grid.size(); ++i)
        if (std::abs(grid.points[i] - pop.grid.points[i]) >
            1e-12 * std::max(1.0, std::abs(grid.points[i])))
            throw NumericalError("GridMismatch", "field and population grids differ");
    const double dw = grid.spacing();  // throws GridMismatch when non-uniform

    const Terms t(field.state, field.params);
    const std::size_t n = grid.size();
    Spectrum out{grid, std::vector<double>(n, 0.0), SpectrumKind::FieldPopulationConvolution,
                 field.state, field.params};
    const double lo = grid.points.front();
    for (std::size_t j = 0; j < n; ++j) {
        double acc = 0.0;
        for (std::size_t kk = 0; kk < n; ++kk) {
            const double shifted = grid.points[j] - grid.points[kk];
            const double pos = (shifted - lo) / dw;
            const double idx = std::round(pos);
            double fv;
            if (std::abs(pos - idx) < 1e-9 && idx >= 0.0 && idx < static_cast<double>(n))
                fv = field.values[static_cast<std::size_t>(idx)];
            else
                fv = t.field(shifted * shifted);
            const double tw = (kk == 0 || kk + 1 == n) ? 0.5 : 1.0;
            acc += tw * fv * pop.values[kk];
        }
        out.values[j] = acc * dw / (2.0 * std::acos(-1.0));
    }
    return out;
}

namespace {

double convolution_value(const Terms& t, const SteadyState& s, const ValidatedParams& p,
                         double omega) {
    std::vector<double> bps = t.breakpoints();
    bps.push_back(omega);
    const double c = t.margin * (t.k * t.g / 2.0);
    if (c > 0.0) {
        const double wc = std::sqrt(c);
        bps.push_back(omega - wc);
        bps.push_back(omega + wc);
    }
    const auto integrand = [&](double u) {
        return t.field((omega - u) * (omega - u)) * population_fluctuation_at(s, p, u);
    };
    const auto r = num::integrate_line(integrand, 1e-7, 1e-14, bps);
    return r.value / (2.0 * std::acos(-1.0));
}

}  // namespace

double spectrum_variance(const Spectrum& spec) {
    const Terms t(spec.state, spec.params);
    const double two_pi = 2.0 * std::acos(-1.0);
    const auto bps = t.breakpoints();
    const auto integrate = [&](const std::function<double(double)>& f, double rel) {
        return num::integrate_line(f, rel, 1e-14, bps).value / two_pi;
    };
    switch (spec.kind) {
        case SpectrumKind::Field:
            return integrate([&](double w) { return t.field(w * w); }, 1e-9);
        case SpectrumKind::PhotonFluct:
            return integrate(
                [&](double w) { return t.photon_numerator(w * w) / t.s_total(w * w); }, 1e-9);
        case SpectrumKind::SigmaFluct:
            if (spec.params.omega_rabi() == 0.0)
                throw NumericalError("DivisionByZeroRate",
                                     "sigma fluctuation spectrum undefined at omega_rabi = 0");
            return integrate(
                [&](double w) {
                    return t.sigma_numerator(w * w) / (t.w_rabi * t.w_rabi * t.s_total(w * w));
                },
                1e-9);
        case SpectrumKind::PopulationFluct:
            return integrate(
                [&](double w) { return population_fluctuation_at(spec.state, spec.params, w); },
                1e-9);
        case SpectrumKind::PopulationFluctSimplified:
            return integrate(
                [&](double w) { return simplified_population_at(spec.state, spec.params, w); },
                1e-9);
        case SpectrumKind::FieldPopulationConvolution:
            // iterated adaptive quadrature; the inner integral is itself adaptive
            return integrate(
                [&](double w) { return convolution_value(t, spec.state, spec.params, w); }, 1e-6);
    }
    throw InputError("WrongSpectrumKind", "unknown spectrum kind");
}

PopulationVarianceDecomposition population_variance_decomposition(const SteadyState& s,
                                                                  const ValidatedParams& p) {
    const Terms t(s, p);
    const double pump_part = t.d2_pop / (2.0 * t.gamma_p);
    double field_part = 0.0;
    if (p.omega_rabi() > 0.0) {
        const auto bps = t.breakpoints();
        const auto integrand = [&](double w) {
            const double w2 = w * w;
            return t.sigma_numerator(w2) / ((w2 + t.gamma_p * t.gamma_p) * t.s_total(w2));
        };
        field_part =
            num::integrate_line(integrand, 1e-9, 1e-14, bps).value / (2.0 * std::acos(-1.0));
    }
    return {pump_part + field_part, pump_part, field_part};
}

FrequencyGrid default_grid(const SteadyState& s, const ValidatedParams& p, std::size_t n_points) {
    const Terms t(s, p);
    const double crs = 2.0 * p.omega_rabi() * p.omega_rabi() * p.coupling_f() *
                       std::abs(s.inversion);
    const double omega_max =
        std::max(10.0 * t.gamma_p, 4.0 * std::sqrt(crs) + 4.0 * (p.kappa() + p.gamma_perp()));
    return FrequencyGrid::symmetric_uniform(omega_max, n_points);
}

}  // namespace srnoise

#include "srnoise/langevin.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace srnoise {

using num::CMat;
using num::cplx;
using num::Mat;

LinearLangevinSystem LinearLangevinSystem::make(Mat drift, Mat diffusion,
                                                std::vector<std::string> labels) {
    if (drift.rows() != drift.cols() || diffusion.rows() != drift.rows() ||
        diffusion.cols() != drift.cols())
        throw InputError("DimensionMismatch", "drift and diffusion must be square and same size");
    if (labels.size() != drift.rows())
        throw InputError("DimensionMismatch", "one label per variable required");
    LinearLangevinSystem sys{std::move(drift), std::move(diffusion), std::move(labels), {}};
    sys.drift_eigenvalues = num::eigenvalues(sys.drift);
    return sys;
}

bool LinearLangevinSystem::hurwitz() const { return max_real_eigenvalue() < 0.0; }

double LinearLangevinSystem::max_real_eigenvalue() const {
    double m = -std::numeric_limits<double>::infinity();
    for (const auto& ev : drift_eigenvalues) m = std::max(m, ev.real());
    return m;
}

double LinearLangevinSystem::slowest_decay_rate() const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& ev : drift_eigenvalues) m = std::min(m, std::abs(ev.real()));
    return m;
}

double LinearLangevinSystem::max_eigenvalue_magnitude() const {
    double m = 0.0;
    for (const auto& ev : drift_eigenvalues) m = std::max(m, std::abs(ev));
    return m;
}

bool LinearLangevinSystem::diffusion_symmetric(double tol) const {
    double scale = 1.0;
    for (std::size_t i = 0; i < dim(); ++i)
        for (std::size_t j = 0; j < dim(); ++j) scale = std::max(scale, std::abs(diffusion(i, j)));
    for (std::size_t i = 0; i < dim(); ++i)
        for (std::size_t j = i + 1; j < dim(); ++j)
            if (std::abs(diffusion(i, j) - diffusion(j, i)) > tol * scale) return false;
    return true;
}

CMat spectral_matrix(const LinearLangevinSystem& sys, double omega) {
    if (!sys.hurwitz())
        throw NumericalError("SingularDrift",
                             "drift has an eigenvalue with real part " +
                                 std::to_string(sys.max_real_eigenvalue()) +
                                 " >= 0; no stationary spectrum");
    const std::size_t n = sys.dim();
    CMat m_plus = num::to_complex(sys.drift);
    CMat m_minus = num::to_complex(sys.drift);
    for (std::size_t i = 0; i < n; ++i) {
        m_plus(i, i) += cplx(0.0, omega);
        m_minus(i, i) -= cplx(0.0, omega);
    }
    // S = (A + iwI)^-1 2D (A^T - iwI)^-1: solve left factor, then the transpose system
    CMat y = num::solve_dense(m_plus, num::to_complex(sys.diffusion));
    CMat st = num::solve_dense(m_minus, y.transposed());
    return st.transposed();
}

Mat field_drift_matrix(const ValidatedParams& p, double inversion) {
    const double coupling = p.omega_rabi() * p.coupling_f() * inversion;
    Mat a(4, 4);
    // variables (a, a+, v, v+)
    a(0, 0) = -p.kappa();
    a(0, 2) = p.omega_rabi();
    a(1, 1) = -p.kappa();
    a(1, 3) = p.omega_rabi();
    a(2, 0) = coupling;
    a(2, 2) = -p.gamma_perp() / 2.0;
    a(3, 1) = coupling;
    a(3, 3) = -p.gamma_perp() / 2.0;
    return a;
}

Mat binary_drift_matrix(const ValidatedParams& p, double inversion) {
    Mat a(3, 3);
    // variables (dn, dSigma, dD)
    a(0, 0) = -2.0 * p.kappa();
    a(0, 1) = p.omega_rabi();
    a(1, 0) = 2.0 * p.omega_rabi() * p.coupling_f() * inversion;
    a(1, 1) = -(p.kappa() + p.gamma_perp() / 2.0);
    a(1, 2) = 2.0 * p.omega_rabi() * p.coupling_f();
    a(2, 1) = p.omega_rabi() * inversion;
    a(2, 2) = -p.gamma_perp();
    return a;
}

namespace {

void require_below_threshold(const SteadyState& s, const ValidatedParams& p) {
    const auto rates = derive_rates(p);
    if (s.inversion >= rates.n_threshold * (1.0 - 1e-12))
        throw above_threshold(s.inversion, rates.n_threshold);
}

}  // namespace

LinearLangevinSystem build_field_system(const SteadyState& s, const ValidatedParams& p) {
    require_below_threshold(s, p);
    Mat d(4, 4);
    d(0, 1) = 2.0 * p.kappa();                          // 2D_{a a+}
    d(2, 3) = p.gamma_perp() * p.coupling_f() * s.n_g;  // 2D_{v v+}
    d(3, 2) = p.gamma_perp() * p.coupling_f() * s.n_e;  // 2D_{v+ v}
    return LinearLangevinSystem::make(field_drift_matrix(p, s.inversion), std::move(d),
                                      {"a", "a+", "v", "v+"});
}

LinearLangevinSystem build_binary_system(const SteadyState& s, const ValidatedParams& p,
                                         BinaryDiffusion diffusion) {
    require_below_threshold(s, p);
    const double k = p.kappa(), g = p.gamma_perp(), f = p.coupling_f();
    const double n0 = static_cast<double>(p.n_emitters());
    Mat d(3, 3);
    d(0, 0) = 2.0 * k * s.n;
    d(0, 1) = d(1, 0) = k * s.sigma;
    d(1, 1) = f * (2.0 * k * s.dipole_d + g * n0 * s.n + (2.0 * k + g) * s.n_e);
    d(1, 2) = d(2, 1) = (g / 2.0) * n0 * s.sigma;
    d(2, 2) = g * (n0 * s.dipole_d +
                   (diffusion == BinaryDiffusion::Olm ? 2.0 * s.n_e * s.n_g : 0.0));
    return LinearLangevinSystem::make(binary_drift_matrix(p, s.inversion), std::move(d),
                                      {"n", "sigma", "d"});
}

Spectrum population_spectrum_via_chain(const SteadyState& s, const ValidatedParams& p,
                                       const FrequencyGrid& grid) {
    const double gamma_p = p.pump() + 1.0;
    const double d2_pop = p.pump() * s.n_g + s.n_e;
    Spectrum out{grid, {}, SpectrumKind::PopulationFluct, s, p};
    out.values.reserve(grid.size());
    if (p.omega_rabi() == 0.0) {
        for (double w : grid.points) out.values.push_back(d2_pop / (w * w + gamma_p * gamma_p));
        return out;
    }
    const auto sys = build_binary_system(s, p, BinaryDiffusion::Olm);
    const double w2_rabi = p.omega_rabi() * p.omega_rabi();
    for (double w : grid.points) {
        const double s_sigma = spectral_matrix(sys, w)(1, 1).real();
        out.values.push_back((w2_rabi * s_sigma + d2_pop) / (w * w + gamma_p * gamma_p));
    }
    return out;
}

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

std::mt19937_64 trajectory_rng(std::uint64_t seed, std::uint64_t trajectory) {
    std::uint64_t s = seed ^ (0xD1B54A32D192ED03ull * (trajectory + 1));
    const std::uint64_t a = splitmix64(s), b = splitmix64(s);
    std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                      static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
    return std::mt19937_64(seq);
}

}  // namespace

TrajectoryEnsemble simulate_time_domain(const LinearLangevinSystem& sys, double dt,
                                        std::size_t n_steps, std::size_t n_trajectories,
                                        std::uint64_t seed) {
    if (!(dt > 0.0) || n_steps == 0 || n_trajectories == 0)
        throw InputError("BadSimulationSpec", "need dt > 0, n_steps > 0, n_trajectories > 0");
    if (!sys.diffusion_symmetric())
        throw NumericalError("IndefiniteDiffusion",
                             "diffusion matrix is not symmetric; time-domain sampling undefined");
    if (!sys.hurwitz())
        throw NumericalError("SingularDrift", "drift not Hurwitz; no stationary regime to sample");
    if (dt * sys.max_eigenvalue_magnitude() > 0.1)
        throw NumericalError("UnstableStep",
                             "dt * max |eigenvalue| = " +
                                 std::to_string(dt * sys.max_eigenvalue_magnitude()) + " > 0.1");
    auto factor = num::factor_symmetric(sys.diffusion, 1e-10);
    if (std::holds_alternative<num::Indefinite>(factor))
        throw NumericalError("IndefiniteDiffusion",
                             "diffusion matrix has eigenvalue " +
                                 std::to_string(std::get<num::Indefinite>(factor).min_eigenvalue) +
                                 " < 0; use the frequency-domain oracle instead");
    const Mat noise_b = std::get<num::SymmetricFactor>(std::move(factor)).b;

    const std::size_t n = sys.dim();
    const double slowest = sys.slowest_decay_rate();
    const std::size_t burn_in =
        (slowest > 0.0) ? static_cast<std::size_t>(std::ceil(10.0 / (slowest * dt))) : 0;

    TrajectoryEnsemble ens;
    ens.dt = dt;
    ens.dim = n;
    ens.n_steps = n_steps;
    ens.burn_in_steps = burn_in;
    ens.labels = sys.labels;
    ens.data.resize(n_trajectories);

    const double sqrt_dt = std::sqrt(dt);
    std::vector<double> x(n), ax(n), noise(n), xi(n);
    for (std::size_t traj = 0; traj < n_trajectories; ++traj) {
        auto rng = trajectory_rng(seed, traj);
        std::normal_distribution<double> gauss(0.0, 1.0);
        std::fill(x.begin(), x.end(), 0.0);
        auto& out = ens.data[traj];
        out.resize(n_steps * n);
        for (std::size_t step = 0; step < burn_in + n_steps; ++step) {
            for (std::size_t i = 0; i < n; ++i) xi[i] = gauss(rng);
            for (std::size_t i = 0; i < n; ++i) {
                double a = 0.0, b = 0.0;
                for (std::size_t j = 0; j < n; ++j) {
                    a += sys.drift(i, j) * x[j];
                    b += noise_b(i, j) * xi[j];
                }
                ax[i] = a;
                noise[i] = b;
            }
            for (std::size_t i = 0; i < n; ++i) x[i] += dt * ax[i] + sqrt_dt * noise[i];
            if (step >= burn_in)
                for (std::size_t i = 0; i < n; ++i) out[(step - burn_in) * n + i] = x[i];
        }
    }
    return ens;
}

namespace {

// iterative radix-2 FFT, in place
void fft(std::vector<cplx>& a) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    const double pi = std::acos(-1.0);
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = -2.0 * pi / static_cast<double>(len);
        const cplx wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            cplx w(1.0);
            for (std::size_t j = 0; j < len / 2; ++j) {
                const cplx u = a[i + j];
                const cplx v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

}  // namespace

WelchSpectrum welch_spectrum(const TrajectoryEnsemble& ens, std::size_t channel,
                             std::size_t segment_length, double overlap) {
    if (channel >= ens.dim) throw InputError("BadChannel", "channel index out of range");
    if (segment_length < 2 || (segment_length & (segment_length - 1)) != 0)
        throw InputError("BadSegmentLength", "segment_length must be a power of two >= 2");
    if (!(overlap >= 0.0 && overlap < 1.0))
        throw InputError("BadOverlap", "overlap must be in [0, 1)");
    if (segment_length > ens.n_steps)
        throw NumericalError("SegmentTooLong", "segment_length " + std::to_string(segment_length) +
                                                   " exceeds trajectory length " +
                                                   std::to_string(ens.n_steps));
    const std::size_t hop = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::llround((1.0 - overlap) * static_cast<double>(segment_length))));
    const std::size_t n_segments = (ens.n_steps - segment_length) / hop + 1;

    const double pi = std::acos(-1.0);
    std::vector<double> window(segment_length);
    double window_power = 0.0;
    for (std::size_t i = 0; i < segment_length; ++i) {
        window[i] = 0.5 * (1.0 - std::cos(2.0 * pi * static_cast<double>(i) /
                                          static_cast<double>(segment_length)));
        window_power += window[i] * window[i];
    }

    const std::size_t n_bins = segment_length / 2 + 1;
    std::vector<double> mean(n_bins, 0.0), m2(n_bins, 0.0);
    std::vector<cplx> buf(segment_length);
    std::vector<double> per_traj(n_bins);
    const std::size_t m_traj = ens.data.size();
    for (std::size_t traj = 0; traj < m_traj; ++traj) {
        std::fill(per_traj.begin(), per_traj.end(), 0.0);
        for (std::size_t seg = 0; seg < n_segments; ++seg) {
            const std::size_t base = seg * hop;
            for (std::size_t i = 0; i < segment_length; ++i)
                buf[i] = ens.data[traj][(base + i) * ens.dim + channel] * window[i];
            fft(buf);
            for (std::size_t b = 0; b < n_bins; ++b)
                per_traj[b] += std::norm(buf[b]) * ens.dt / window_power;
        }
        for (std::size_t b = 0; b < n_bins; ++b) {
            per_traj[b] /= static_cast<double>(n_segments);
            const double delta = per_traj[b] - mean[b];
            mean[b] += delta / static_cast<double>(traj + 1);
            m2[b] += delta * (per_traj[b] - mean[b]);
        }
    }

    WelchSpectrum out;
    out.omega.resize(n_bins);
    out.values = mean;
    out.stderrs.resize(n_bins);
    for (std::size_t b = 0; b < n_bins; ++b) {
        out.omega[b] = 2.0 * pi * static_cast<double>(b) /
                       (static_cast<double>(segment_length) * ens.dt);
        out.stderrs[b] = (m_traj > 1)
                             ? std::sqrt(m2[b] / static_cast<double>(m_traj - 1) /
                                         static_cast<double>(m_traj))
                             : std::numeric_limits<double>::quiet_NaN();
    }
    return out;
}

}  // namespace srnoise

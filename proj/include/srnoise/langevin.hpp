#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "srnoise/numerics.hpp"
#include "srnoise/params.hpp"
#include "srnoise/spectra.hpp"
#include "srnoise/steady_state.hpp"

namespace srnoise {

// Stationary linear Langevin system xdot = A x + F with delta-correlated
// forces <F_a(t) F_b(t')> = 2D_ab delta(t - t'). The diffusion matrix is kept
// as given (operator-ordered systems are not symmetric); drift eigenvalues are
// computed once at construction.
struct LinearLangevinSystem {
    num::Mat drift;
    num::Mat diffusion;  // entries 2D_ab
    std::vector<std::string> labels;
    std::vector<num::cplx> drift_eigenvalues;

    static LinearLangevinSystem make(num::Mat drift, num::Mat diffusion,
                                     std::vector<std::string> labels);

    std::size_t dim() const noexcept { return drift.rows(); }
    bool hurwitz() const;                  // all eigenvalue real parts < 0
    double max_real_eigenvalue() const;    // stability margin
    double slowest_decay_rate() const;     // min |Re lambda|
    double max_eigenvalue_magnitude() const;
    bool diffusion_symmetric(double tol = 1e-10) const;
};

// S(omega) = (A + i w I)^-1 (2D) (A^T - i w I)^-1, the stationary spectral
// matrix under the e^{-i w t} transform with <x(w) x(w')^T> = S(w) d(w + w').
// Throws SingularDrift when the drift is not Hurwitz.
num::CMat spectral_matrix(const LinearLangevinSystem& sys, double omega);

// Zero-order field system in (a, a+, v, v+) with vacuum-input diffusion
// 2D_{a a+} = 2 kappa, 2D_{v v+} = gamma_perp f Ng, 2D_{v+ v} = gamma_perp f Ne.
// Throws AboveThreshold.
LinearLangevinSystem build_field_system(const SteadyState& s, const ValidatedParams& p);

enum class BinaryDiffusion {
    Olm,  // includes the 2 gamma_perp Ne Ng term in 2D_DD
    Ger,  // that term removed, for comparison runs
};

// Binary fluctuation system in (dn, dSigma, dD). Throws AboveThreshold.
LinearLangevinSystem build_binary_system(const SteadyState& s, const ValidatedParams& p,
                                         BinaryDiffusion diffusion = BinaryDiffusion::Olm);

// Drift matrices alone, exposed for stability analysis at arbitrary inversion.
num::Mat field_drift_matrix(const ValidatedParams& p, double inversion);
num::Mat binary_drift_matrix(const ValidatedParams& p, double inversion);

// Population spectrum assembled from the binary spectral matrix:
//   d2Ne(w) = [Omega^2 S_SigmaSigma(w) + 2 D_NeNe] / (w^2 + gamma_P^2).
Spectrum population_spectrum_via_chain(const SteadyState& s, const ValidatedParams& p,
                                       const FrequencyGrid& grid);

struct TrajectoryEnsemble {
    double dt = 0.0;
    std::size_t dim = 0;
    std::size_t n_steps = 0;        // retained steps per trajectory (after burn-in)
    std::size_t burn_in_steps = 0;
    std::vector<std::string> labels;
    std::vector<std::vector<double>> data;  // [trajectory][step * dim + variable]
};

// Euler-Maruyama integration from x(0) = 0 with a burn-in of 10 slowest-decay
// times discarded. Deterministic given the seed; trajectory k uses an
// independent stream derived from (seed, k).
// Throws IndefiniteDiffusion (with the offending eigenvalue) or UnstableStep.
TrajectoryEnsemble simulate_time_domain(const LinearLangevinSystem& sys, double dt,
                                        std::size_t n_steps, std::size_t n_trajectories,
                                        std::uint64_t seed);

struct WelchSpectrum {
    std::vector<double> omega;    // nonnegative DFT frequencies, rad per unit time
    std::vector<double> values;   // two-sided PSD, variance = (2pi)^-1 integral over the line
    std::vector<double> stderrs;  // per-bin standard error across trajectories
};

// Hann-windowed averaged periodogram. segment_length must be a power of two;
// overlap is the fractional segment overlap. Throws SegmentTooLong.
WelchSpectrum welch_spectrum(const TrajectoryEnsemble& ens, std::size_t channel,
                             std::size_t segment_length, double overlap = 0.5);

}  // namespace srnoise

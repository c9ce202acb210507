// Copyright 2026 The Photonic Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "photonic/elements.hpp"
#include "photonic/fock.hpp"
#include "photonic/rng.hpp"

namespace photonic {

enum class ProbeKind { Coherent, ZeroN, Noon, SqueezedVacuum };

// Probe used for phase estimation. `photon_number` is N for the ZeroN and
// Noon kinds; `parameter` is the mean photon number for Coherent and the
// squeezing parameter for SqueezedVacuum. The realized state carries its
// own truncation residual.
struct ProbeState {
    ProbeKind kind = ProbeKind::Coherent;
    int photon_number = 0;
    double parameter = 0.0;
    StateVector realized = StateVector::vacuum(1, 0);
};

inline ProbeState probe_coherent(double nbar, int cutoff = -1) {
    if (nbar <= 0.0) {
        throw std::invalid_argument("probe_coherent: mean photon number must be positive");
    }
    if (cutoff < 0) {
        cutoff = static_cast<int>(nbar + 10.0 * std::sqrt(nbar) + 20.0);
    }
    ProbeState p;
    p.kind = ProbeKind::Coherent;
    p.parameter = nbar;
    p.realized = coherent_state(std::sqrt(nbar), cutoff);
    return p;
}

// (|0> + |N>)/sqrt2 on one mode.
inline ProbeState probe_zero_n(int n, int cutoff = -1) {
    if (n < 1) {
        throw std::invalid_argument("probe_zero_n: N must be >= 1");
    }
    if (cutoff < 0) {
        cutoff = n;
    }
    if (cutoff < n) {
        throw std::invalid_argument("probe_zero_n: cutoff below N");
    }
    AmplitudeMap amps;
    double s = 1.0 / std::sqrt(2.0);
    amps[FockState({0})] = s;
    amps[FockState({n})] = s;
    ProbeState p;
    p.kind = ProbeKind::ZeroN;
    p.photon_number = n;
    p.realized = StateVector::from_amplitudes(1, cutoff, amps);
    return p;
}

// (|N,0> + |0,N>)/sqrt2 on two modes.
inline ProbeState probe_noon(int n, int cutoff = -1) {
    if (n < 1) {
        throw std::invalid_argument("probe_noon: N must be >= 1");
    }
    if (cutoff < 0) {
        cutoff = 2 * n;
    }
    if (cutoff < 2 * n) {
        throw std::invalid_argument("probe_noon: cutoff below 2N");
    }
    AmplitudeMap amps;
    double s = 1.0 / std::sqrt(2.0);
    amps[FockState({n, 0})] = s;
    amps[FockState({0, n})] = s;
    ProbeState p;
    p.kind = ProbeKind::Noon;
    p.photon_number = n;
    p.realized = StateVector::from_amplitudes(2, cutoff, amps);
    return p;
}

inline ProbeState probe_squeezed(double r, int cutoff = 50) {
    if (r < 0.0) {
        throw std::invalid_argument("probe_squeezed: r must be >= 0");
    }
    ProbeState p;
    p.kind = ProbeKind::SqueezedVacuum;
    p.parameter = r;
    p.realized = squeezed_vacuum_state(r, cutoff);
    return p;
}

// Variance of the photon number seen by the phase shifter (mode 0); this is
// the generator of the phase evolution, so 1/(2 Delta K) lower-bounds the
// per-shot phase precision.
inline double generator_variance(const ProbeState& probe) {
    double mean = 0.0;
    double second = 0.0;
    double norm2 = 0.0;
    for (const auto& [fs, amp] : probe.realized.amplitudes()) {
        double w = std::norm(amp);
        double n = fs.occ[0];
        mean += w * n;
        second += w * n * n;
        norm2 += w;
    }
    mean /= norm2;
    second /= norm2;
    return second - mean * mean;
}

// Exact expectation of the two-outcome interference observable after a
// phase shift on mode 0: cos(N phi) for both the single-mode |0>+|N> probe
// and the two-mode NOON probe.
inline double probe_phase_expectation(const ProbeState& probe, double phi) {
    if (probe.kind != ProbeKind::ZeroN && probe.kind != ProbeKind::Noon) {
        throw std::invalid_argument("probe_phase_expectation: needs a ZeroN or Noon probe");
    }
    StateVector shifted = apply_phase_shifter(probe.realized, 0, phi);
    FockState first = probe.kind == ProbeKind::ZeroN
                          ? FockState({0})
                          : FockState({probe.photon_number, 0});
    FockState second = probe.kind == ProbeKind::ZeroN
                           ? FockState({probe.photon_number})
                           : FockState({0, probe.photon_number});
    // A = |first><second| + |second><first|.
    complexd c1 = shifted.amplitude(first);
    complexd c2 = shifted.amplitude(second);
    return 2.0 * (std::conj(c1) * c2).real();
}

struct PrecisionEstimate {
    std::string parameter;
    double estimate = 0.0;
    double std_error = 0.0;
    int shots = 0;
    double resource = 0.0;  // <n> or N, depending on the probe
    bool singular = false;  // estimate sits near an inversion singularity
};

// Phase estimation with the (|0> + |N>)/sqrt2 probe. M two-outcome
// measurements of A = |N><0| + |0><N| are drawn at the true phase, the mean
// is inverted through <A> = cos(N phi), and the binomial error is
// propagated. The propagated error is 1/(N sqrt M) independent of the
// observed mean; estimates with |<A>| at the edge of the inversion are
// flagged singular but still returned.
inline PrecisionEstimate phase_estimate_zero_n(int n, double phi_true, int shots,
                                               std::uint64_t seed) {
    if (n < 1) {
        throw std::invalid_argument("phase_estimate_zero_n: N must be >= 1");
    }
    if (shots < 100) {
        throw std::invalid_argument("phase_estimate_zero_n: shots must be >= 100");
    }
    ProbeState probe = probe_zero_n(n);
    double mean_a = probe_phase_expectation(probe, phi_true);
    double p_plus = 0.5 * (1.0 + mean_a);

    SplitMix64 rng(seed);
    int plus = rng.next_binomial(shots, p_plus);
    double a_hat = (2.0 * plus - shots) / static_cast<double>(shots);

    PrecisionEstimate est;
    est.parameter = "phi";
    est.shots = shots;
    est.resource = n;
    est.singular = std::abs(a_hat) > 1.0 - 1e-9;
    double clamped = std::clamp(a_hat, -1.0, 1.0);
    est.estimate = std::acos(clamped) / n;
    est.std_error = 1.0 / (n * std::sqrt(static_cast<double>(shots)));
    return est;
}

// Shot-noise reference: a coherent beam of mean photon number nbar leaves
// one interferometer port with intensity nbar (1 + cos phi)/2. M Poisson
// reads of that port are averaged and inverted for phi; the propagated
// error carries the 1/sqrt(M nbar) shot-noise scaling.
inline PrecisionEstimate shot_noise_baseline(double nbar, double phi_true, int shots,
                                             std::uint64_t seed) {
    if (nbar <= 0.0) {
        throw std::invalid_argument("shot_noise_baseline: nbar must be positive");
    }
    if (shots < 1) {
        throw std::invalid_argument("shot_noise_baseline: shots must be >= 1");
    }
    double mu = nbar * (1.0 + std::cos(phi_true)) / 2.0;
    SplitMix64 rng(seed);
    double total = 0.0;
    for (int i = 0; i < shots; ++i) {
        total += rng.next_poisson(mu);
    }
    double mean = total / shots;

    PrecisionEstimate est;
    est.parameter = "phi";
    est.shots = shots;
    est.resource = nbar;
    double cos_hat = std::clamp(2.0 * mean / nbar - 1.0, -1.0, 1.0);
    est.estimate = std::acos(cos_hat);
    double sin_hat = std::sqrt(std::max(1.0 - cos_hat * cos_hat, 0.0));
    est.singular = sin_hat < 1e-6;
    double sigma_mean = std::sqrt(std::max(mean, 1e-12) / shots);
    est.std_error = 2.0 * sigma_mean / (nbar * std::max(sin_hat, 1e-6));
    return est;
}

// Heisenberg-limited bound for a squeezed interferometer probe.
inline double squeezed_precision_bound(double r, double nbar, int shots) {
    if (r < 0.0 || nbar <= 0.0 || shots < 1) {
        throw std::invalid_argument("squeezed_precision_bound: bad arguments");
    }
    return std::exp(-r) / std::sqrt(static_cast<double>(shots) * nbar);
}

enum class Quadrature { X, Y };

// <Q^2> - <Q>^2 for X = (a + a+)/sqrt2 or Y = -i(a - a+)/sqrt2, evaluated
// exactly in the truncated basis (the state is re-embedded with two extra
// photons of headroom so the ladder operators do not clip). Vacuum and
// coherent states give 1/2; squeezed vacuum gives exp(-2r)/2 in X up to its
// truncation residual, which the input state reports via truncation_loss().
inline double quadrature_variance(const StateVector& sv, Quadrature which) {
    if (sv.mode_count() != 1) {
        throw std::invalid_argument("quadrature_variance: single-mode states only");
    }
    StateVector s = StateVector::from_amplitudes(1, sv.cutoff() + 2, sv.amplitudes());
    double n2 = s.squared_norm();
    StateVector a1 = apply_annihilation(s, 0);
    StateVector a2 = apply_annihilation(a1, 0);
    StateVector c1 = apply_creation(s, 0);

    complexd mean_a = inner_product(s, a1) / n2;
    complexd mean_aa = inner_product(s, a2) / n2;
    double mean_n = inner_product(a1, a1).real() / n2;
    double mean_aad = inner_product(c1, c1).real() / n2;  // <a a+> = <n> + 1

    double mean_q;
    double mean_q2;
    if (which == Quadrature::X) {
        mean_q = std::sqrt(2.0) * mean_a.real();
        mean_q2 = 0.5 * (2.0 * mean_aa.real() + mean_n + mean_aad);
    } else {
        mean_q = std::sqrt(2.0) * mean_a.imag();
        mean_q2 = 0.5 * (mean_n + mean_aad - 2.0 * mean_aa.real());
    }
    return mean_q2 - mean_q * mean_q;
}

struct ScalingPoint {
    double resource = 0.0;
    double delta_phi = 0.0;
    double std_error = 0.0;
};

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

inline LineFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.size() < 2) {
        throw std::invalid_argument("fit_line: need matching samples, at least two");
    }
    double n = static_cast<double>(xs.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
        syy += ys[i] * ys[i];
    }
    double denom = n * sxx - sx * sx;
    if (std::abs(denom) < 1e-300) {
        throw std::invalid_argument("fit_line: degenerate abscissae");
    }
    LineFit fit;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    double ss_res = 0.0;
    double ss_tot = 0.0;
    double mean_y = sy / n;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double pred = fit.slope * xs[i] + fit.intercept;
        ss_res += (ys[i] - pred) * (ys[i] - pred);
        ss_tot += (ys[i] - mean_y) * (ys[i] - mean_y);
    }
    fit.r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    return fit;
}

inline LineFit fit_loglog(const std::vector<ScalingPoint>& points) {
    std::vector<double> xs;
    std::vector<double> ys;
    for (const auto& p : points) {
        xs.push_back(std::log(p.resource));
        ys.push_back(std::log(p.delta_phi));
    }
    return fit_line(xs, ys);
}

// Realized root-mean-square error of the N-photon probe over `repeats`
// independent estimation runs, swept over N. The true phase is phi0/N so
// every point operates at the same interference contrast; the RMSE then
// exposes the 1/N resource scaling directly.
inline std::vector<ScalingPoint> heisenberg_scaling_sweep(const std::vector<int>& ns,
                                                          double phi0, int shots,
                                                          int repeats,
                                                          std::uint64_t seed) {
    if (repeats < 2) {
        throw std::invalid_argument("heisenberg_scaling_sweep: repeats must be >= 2");
    }
    std::vector<ScalingPoint> points;
    std::uint64_t stream = 0;
    for (int n : ns) {
        double phi_true = phi0 / n;
        double sq = 0.0;
        for (int r = 0; r < repeats; ++r) {
            PrecisionEstimate est =
                phase_estimate_zero_n(n, phi_true, shots, derive_seed(seed, stream++));
            double err = est.estimate - phi_true;
            sq += err * err;
        }
        double rmse = std::sqrt(sq / repeats);
        ScalingPoint p;
        p.resource = n;
        p.delta_phi = rmse;
        p.std_error = rmse / std::sqrt(2.0 * (repeats - 1));
        points.push_back(p);
    }
    return points;
}

// Same sweep for the coherent probe at fixed phase, swept over nbar; the
// RMSE carries the 1/sqrt(nbar) shot-noise scaling.
inline std::vector<ScalingPoint> shot_noise_scaling_sweep(const std::vector<double>& nbars,
                                                          double phi_true, int shots,
                                                          int repeats,
                                                          std::uint64_t seed) {
    if (repeats < 2) {
        throw std::invalid_argument("shot_noise_scaling_sweep: repeats must be >= 2");
    }
    std::vector<ScalingPoint> points;
    std::uint64_t stream = 0;
    for (double nbar : nbars) {
        double sq = 0.0;
        for (int r = 0; r < repeats; ++r) {
            PrecisionEstimate est =
                shot_noise_baseline(nbar, phi_true, shots, derive_seed(seed, stream++));
            double err = est.estimate - phi_true;
            sq += err * err;
        }
        double rmse = std::sqrt(sq / repeats);
        ScalingPoint p;
        p.resource = nbar;
        p.delta_phi = rmse;
        p.std_error = rmse / std::sqrt(2.0 * (repeats - 1));
        points.push_back(p);
    }
    return points;
}

namespace detail {

// Profile least squares for a single spatial fringe frequency: for fixed
// sigma the model C + A cos(2 pi sigma x) + B sin(2 pi sigma x) is linear,
// so the residual sum of squares is minimized over (C, A, B) in closed form
// and sigma is the only nonlinear parameter.
inline double fringe_rss(const std::vector<double>& xs, const std::vector<double>& cs,
                         double sigma) {
    Eigen::Matrix3d gram = Eigen::Matrix3d::Zero();
    Eigen::Vector3d rhs = Eigen::Vector3d::Zero();
    double yy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double w = 2.0 * std::numbers::pi * sigma * xs[i];
        Eigen::Vector3d basis(1.0, std::cos(w), std::sin(w));
        gram += basis * basis.transpose();
        rhs += basis * cs[i];
        yy += cs[i] * cs[i];
    }
    Eigen::Vector3d theta = gram.ldlt().solve(rhs);
    return yy - 2.0 * theta.dot(rhs) + theta.dot(gram * theta);
}

inline double fringe_frequency(const std::vector<double>& xs, const std::vector<double>& cs,
                               double span) {
    // Coarse scan at half the Fourier resolution, then golden-section.
    std::size_t pixels = xs.size();
    double f_max = static_cast<double>(pixels) / (2.0 * span);
    double step = 0.5 / span;
    double best_f = step;
    double best_rss = std::numeric_limits<double>::infinity();
    for (double f = step; f < f_max; f += step) {
        double rss = fringe_rss(xs, cs, f);
        if (rss < best_rss) {
            best_rss = rss;
            best_f = f;
        }
    }
    double lo = std::max(best_f - step, 0.25 / span);
    double hi = best_f + step;
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = hi - gr * (hi - lo);
    double d = lo + gr * (hi - lo);
    double fc = fringe_rss(xs, cs, c);
    double fd = fringe_rss(xs, cs, d);
    for (int iter = 0; iter < 200 && (hi - lo) > 1e-13 * best_f; ++iter) {
        if (fc < fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - gr * (hi - lo);
            fc = fringe_rss(xs, cs, c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + gr * (hi - lo);
            fd = fringe_rss(xs, cs, d);
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace detail

// Interferometric micrometer: a slit separation d imprints fringes of
// spatial frequency sigma = 2d/(lambda L) across the screen, so counting
// fringes measures d = lambda L sigma / 2. The screen is a 512-pixel strip
// of length L read out with Poissonian counting noise at the given total
// photon budget (split over eight batches for the error bar); a budget of
// zero means a noiseless readout of the intensity profile. Fewer than one
// fringe across the screen leaves the count degenerate and flags the
// estimate as singular.
inline PrecisionEstimate micrometer_estimate(double lambda, double screen_length,
                                             double d_true, double photons,
                                             std::uint64_t seed) {
    if (lambda <= 0.0 || screen_length <= 0.0 || d_true <= 0.0 || photons < 0.0) {
        throw std::invalid_argument("micrometer_estimate: dimensions must be positive");
    }
    const int pixels = 512;
    const int batches = 8;
    double sigma_true = 2.0 * d_true / (lambda * screen_length);

    std::vector<double> xs(pixels);
    std::vector<double> profile(pixels);
    double total_intensity = 0.0;
    for (int i = 0; i < pixels; ++i) {
        xs[static_cast<std::size_t>(i)] = (i + 0.5) * screen_length / pixels;
        double val =
            1.0 + std::cos(2.0 * std::numbers::pi * sigma_true * xs[static_cast<std::size_t>(i)]);
        profile[static_cast<std::size_t>(i)] = val;
        total_intensity += val;
    }

    PrecisionEstimate est;
    est.parameter = "d";
    est.resource = photons;
    est.singular = sigma_true * screen_length < 1.0;

    if (photons == 0.0) {
        double sigma_hat = detail::fringe_frequency(xs, profile, screen_length);
        est.estimate = lambda * screen_length * sigma_hat / 2.0;
        est.std_error = 0.0;
        est.shots = 0;
        return est;
    }

    SplitMix64 rng(seed);
    std::vector<double> sigma_hats;
    std::vector<double> counts(pixels);
    for (int b = 0; b < batches; ++b) {
        for (int i = 0; i < pixels; ++i) {
            double mu = (photons / batches) * profile[static_cast<std::size_t>(i)] /
                        total_intensity;
            counts[static_cast<std::size_t>(i)] = rng.next_poisson(mu);
        }
        sigma_hats.push_back(detail::fringe_frequency(xs, counts, screen_length));
    }
    double mean = 0.0;
    for (double s : sigma_hats) mean += s;
    mean /= batches;
    double var = 0.0;
    for (double s : sigma_hats) var += (s - mean) * (s - mean);
    var /= (batches - 1);

    est.estimate = lambda * screen_length * mean / 2.0;
    est.std_error = lambda * screen_length * std::sqrt(var / batches) / 2.0;
    est.shots = batches;
    return est;
}

// Two-slit far-field intensity: cos^2 from the slit separation times the
// sinc^2 single-slit envelope, normalized to 1 at the center.
struct DoubleSlitGeometry {
    double slit_width = 0.0;      // a
    double separation = 0.0;      // d
    double distance = 0.0;        // L to the screen
    double wavelength = 0.0;      // lambda
};

inline double double_slit_intensity(const DoubleSlitGeometry& g, double x) {
    if (g.slit_width <= 0.0 || g.separation <= 0.0 || g.distance <= 0.0 ||
        g.wavelength <= 0.0) {
        throw std::invalid_argument("double_slit_intensity: dimensions must be positive");
    }
    double u = x * g.separation * std::numbers::pi / (g.distance * g.wavelength);
    double v = x * g.slit_width * std::numbers::pi / (g.distance * g.wavelength);
    double sinc = v == 0.0 ? 1.0 : std::sin(v) / v;
    double cosf = std::cos(u);
    return cosf * cosf * sinc * sinc;
}

// Draws single-photon screen positions from the normalized intensity over
// [-half_width, half_width] by inverting a piecewise-linear CDF on a fine
// grid. Histograms of the draws converge to the intensity curve.
class DoubleSlitSampler {
  public:
    DoubleSlitSampler(const DoubleSlitGeometry& geometry, double half_width,
                      int grid = 4096)
        : geometry_(geometry), half_width_(half_width) {
        if (half_width <= 0.0 || grid < 16) {
            throw std::invalid_argument("DoubleSlitSampler: bad domain");
        }
        cdf_.resize(static_cast<std::size_t>(grid) + 1, 0.0);
        double dx = 2.0 * half_width / grid;
        for (int i = 0; i < grid; ++i) {
            double x = -half_width + (i + 0.5) * dx;
            cdf_[static_cast<std::size_t>(i) + 1] =
                cdf_[static_cast<std::size_t>(i)] + double_slit_intensity(geometry, x);
        }
        double total = cdf_.back();
        for (auto& c : cdf_) {
            c /= total;
        }
    }

    double sample(SplitMix64& rng) const {
        double u = rng.next_double();
        auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
        std::size_t idx = it == cdf_.begin()
                              ? 0
                              : static_cast<std::size_t>(it - cdf_.begin()) - 1;
        idx = std::min(idx, cdf_.size() - 2);
        double lo = cdf_[idx];
        double hi = cdf_[idx + 1];
        double frac = hi > lo ? (u - lo) / (hi - lo) : 0.5;
        double dx = 2.0 * half_width_ / (static_cast<double>(cdf_.size()) - 1.0);
        return -half_width_ + (static_cast<double>(idx) + frac) * dx;
    }

    const DoubleSlitGeometry& geometry() const { return geometry_; }
    double half_width() const { return half_width_; }

  private:
    DoubleSlitGeometry geometry_;
    double half_width_;
    std::vector<double> cdf_;
};

}  // namespace photonic

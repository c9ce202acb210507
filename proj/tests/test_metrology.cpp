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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <vector>

#include "photonic/metrology.hpp"

using photonic::AmplitudeMap;
using photonic::DoubleSlitGeometry;
using photonic::DoubleSlitSampler;
using photonic::FockState;
using photonic::LineFit;
using photonic::PrecisionEstimate;
using photonic::ProbeKind;
using photonic::ProbeState;
using photonic::Quadrature;
using photonic::ScalingPoint;
using photonic::SplitMix64;
using photonic::StateVector;
using photonic::complexd;

namespace {

// Upper 95% chi-squared quantile by the Wilson-Hilferty cube approximation,
// good to a fraction of a percent for the dozens-of-bins regime used here.
double chi2_quantile_95(int dof) {
    double k = dof;
    double z = 1.6448536269514722;
    double term = 1.0 - 2.0 / (9.0 * k) + z * std::sqrt(2.0 / (9.0 * k));
    return k * term * term * term;
}

StateVector random_single_mode(SplitMix64& rng, int top) {
    AmplitudeMap amps;
    double n2 = 0.0;
    std::vector<complexd> cs;
    for (int n = 0; n <= top; ++n) {
        complexd c(rng.next_normal(), rng.next_normal());
        cs.push_back(c);
        n2 += std::norm(c);
    }
    for (int n = 0; n <= top; ++n) {
        amps[FockState({n})] = cs[static_cast<std::size_t>(n)] / std::sqrt(n2);
    }
    return StateVector::from_amplitudes(1, top, amps);
}

}  // namespace

TEST_CASE("probe constructors realize the advertised states", "[metrology]") {
    ProbeState zn = photonic::probe_zero_n(4);
    double s = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(zn.realized.amplitude(FockState({0})) - complexd(s)) < 1e-12);
    CHECK(std::abs(zn.realized.amplitude(FockState({4})) - complexd(s)) < 1e-12);

    ProbeState noon = photonic::probe_noon(3);
    CHECK(std::abs(noon.realized.amplitude(FockState({3, 0})) - complexd(s)) < 1e-12);
    CHECK(std::abs(noon.realized.amplitude(FockState({0, 3})) - complexd(s)) < 1e-12);
    double n_total = photonic::mean_photon_number(noon.realized, 0) +
                     photonic::mean_photon_number(noon.realized, 1);
    CHECK(std::abs(n_total - 3.0) < 1e-12);

    // N=1 NOON is the balanced single-photon superposition.
    ProbeState one = photonic::probe_noon(1);
    CHECK(std::abs(one.realized.amplitude(FockState({1, 0})) - complexd(s)) < 1e-12);
    CHECK(std::abs(one.realized.amplitude(FockState({0, 1})) - complexd(s)) < 1e-12);

    CHECK_THROWS_AS(photonic::probe_zero_n(0), std::invalid_argument);
    CHECK_THROWS_AS(photonic::probe_zero_n(4, 3), std::invalid_argument);
    CHECK_THROWS_AS(photonic::probe_noon(3, 5), std::invalid_argument);
    CHECK_THROWS_AS(photonic::probe_coherent(-1.0), std::invalid_argument);
}

TEST_CASE("phase expectation is the interference cosine", "[metrology]") {
    ProbeState probe = photonic::probe_zero_n(1);
    CHECK(std::abs(photonic::probe_phase_expectation(probe, std::numbers::pi / 4.0) -
                   std::cos(std::numbers::pi / 4.0)) < 1e-12);
    CHECK(std::abs(photonic::probe_phase_expectation(probe, 0.0) - 1.0) < 1e-12);

    ProbeState p3 = photonic::probe_zero_n(3);
    CHECK(std::abs(photonic::probe_phase_expectation(p3, 0.4) - std::cos(1.2)) < 1e-12);
}

TEST_CASE("zero-n and noon probes share their phase statistics", "[metrology]") {
    for (int n : {1, 2, 3, 5}) {
        ProbeState zn = photonic::probe_zero_n(n);
        ProbeState noon = photonic::probe_noon(n);
        for (int k = 0; k < 25; ++k) {
            double phi = -3.0 + 0.25 * k;
            double a = photonic::probe_phase_expectation(zn, phi);
            double b = photonic::probe_phase_expectation(noon, phi);
            CHECK(std::abs(a - b) < 1e-10);
        }
    }
}

TEST_CASE("a pi-over-N shift flips the noon relative phase", "[metrology]") {
    int n = 4;
    ProbeState noon = photonic::probe_noon(n);
    StateVector shifted =
        photonic::apply_phase_shifter(noon.realized, 0, std::numbers::pi / n);
    complexd before = noon.realized.amplitude(FockState({n, 0})) /
                      noon.realized.amplitude(FockState({0, n}));
    complexd after = shifted.amplitude(FockState({n, 0})) /
                     shifted.amplitude(FockState({0, n}));
    CHECK(std::abs(after / before + complexd(1.0)) < 1e-12);
}

TEST_CASE("phase estimation inverts the cosine and reports 1/(N sqrt M)", "[metrology]") {
    int shots = 200000;
    PrecisionEstimate est =
        photonic::phase_estimate_zero_n(1, std::numbers::pi / 4.0, shots, 4242);
    CHECK_FALSE(est.singular);
    CHECK(std::abs(est.std_error - 1.0 / std::sqrt(static_cast<double>(shots))) < 1e-15);
    CHECK(std::abs(est.estimate - std::numbers::pi / 4.0) < 5.0 * est.std_error);

    PrecisionEstimate est3 = photonic::phase_estimate_zero_n(3, 0.3, shots, 99);
    CHECK(std::abs(est3.std_error - 1.0 / (3.0 * std::sqrt(static_cast<double>(shots)))) <
          1e-15);
    CHECK(std::abs(est3.estimate - 0.3) < 5.0 * est3.std_error);

    PrecisionEstimate flat = photonic::phase_estimate_zero_n(2, 0.0, 1000, 7);
    CHECK(flat.singular);
    CHECK(flat.estimate == 0.0);

    CHECK_THROWS_AS(photonic::phase_estimate_zero_n(0, 0.1, 1000, 1), std::invalid_argument);
    CHECK_THROWS_AS(photonic::phase_estimate_zero_n(2, 0.1, 50, 1), std::invalid_argument);
}

TEST_CASE("shot-noise error drops by sqrt2 when the power doubles", "[metrology]") {
    int shots = 20000;
    PrecisionEstimate lo =
        photonic::shot_noise_baseline(8.0, std::numbers::pi / 2.0, shots, 11);
    PrecisionEstimate hi =
        photonic::shot_noise_baseline(16.0, std::numbers::pi / 2.0, shots, 12);
    double ratio = lo.std_error / hi.std_error;
    CHECK(ratio > std::sqrt(2.0) * 0.95);
    CHECK(ratio < std::sqrt(2.0) * 1.05);
    CHECK(lo.std_error > 0.0);
}

TEST_CASE("poisson intensity has a root-n signal to noise ratio", "[metrology]") {
    double nbar = 9.0;
    SplitMix64 rng(0x5A12);
    int m = 40000;
    double sum = 0.0;
    double sum2 = 0.0;
    for (int i = 0; i < m; ++i) {
        double k = rng.next_poisson(nbar);
        sum += k;
        sum2 += k * k;
    }
    double mean = sum / m;
    double var = sum2 / m - mean * mean;
    double snr = mean / std::sqrt(var);
    CHECK(std::abs(snr - std::sqrt(nbar)) / std::sqrt(nbar) < 0.03);
}

TEST_CASE("heisenberg sweep fits a slope of minus one", "[metrology]") {
    std::vector<ScalingPoint> points = photonic::heisenberg_scaling_sweep(
        {1, 2, 3, 4, 6, 8}, std::numbers::pi / 3.0, 1024, 512, 2026);
    LineFit fit = photonic::fit_loglog(points);
    CHECK(std::abs(fit.slope + 1.0) < 0.05);
    CHECK(fit.r2 > 0.99);
    for (const auto& p : points) {
        CHECK(p.std_error > 0.0);
    }
}

TEST_CASE("shot-noise sweep fits a slope of minus one half", "[metrology]") {
    std::vector<ScalingPoint> points = photonic::shot_noise_scaling_sweep(
        {1.0, 2.0, 4.0, 8.0, 16.0}, std::numbers::pi / 2.0, 400, 150, 2027);
    LineFit fit = photonic::fit_loglog(points);
    CHECK(std::abs(fit.slope + 0.5) < 0.05);
    CHECK(fit.r2 > 0.98);
}

TEST_CASE("realized precision respects the generator bound", "[metrology]") {
    // Per-shot restatement of the variance bound: stderr * sqrt(M) can never
    // undercut 1/(2 Delta K). The propagated errors are analytic, so the
    // comparison needs no sampling allowance; the zero-n probe saturates the
    // bound exactly.
    int shots = 4096;
    for (int n : {1, 2, 4}) {
        ProbeState probe = photonic::probe_zero_n(n);
        double dk = std::sqrt(photonic::generator_variance(probe));
        CHECK(std::abs(dk - n / 2.0) < 1e-12);
        PrecisionEstimate est = photonic::phase_estimate_zero_n(n, 0.9 / n, shots, 31 + n);
        double per_shot = est.std_error * std::sqrt(static_cast<double>(shots));
        CHECK(per_shot >= (1.0 - 1e-9) / (2.0 * dk));
        CHECK(per_shot <= (1.0 + 1e-9) / (2.0 * dk));
    }
    for (double nbar : {4.0, 16.0}) {
        ProbeState probe = photonic::probe_coherent(nbar);
        double dk = std::sqrt(photonic::generator_variance(probe));
        CHECK(std::abs(dk - std::sqrt(nbar)) < 1e-6);
        PrecisionEstimate est =
            photonic::shot_noise_baseline(nbar, std::numbers::pi / 2.0, shots, 77);
        double per_shot = est.std_error * std::sqrt(static_cast<double>(shots));
        CHECK(per_shot >= (1.0 - 1e-9) / (2.0 * dk));
    }
    // The noon probe's generator matches the zero-n probe, so the identical
    // statistics inherit the same saturation.
    for (int n : {2, 5}) {
        ProbeState noon = photonic::probe_noon(n);
        CHECK(std::abs(photonic::generator_variance(noon) - n * n / 4.0) < 1e-12);
    }
    // Squeezed probes: formula bound against the generator bound.
    for (double r : {0.3, 0.6, 1.0}) {
        ProbeState probe = photonic::probe_squeezed(r);
        double nbar = std::sinh(r) * std::sinh(r);
        double dk = std::sqrt(photonic::generator_variance(probe));
        double bound = photonic::squeezed_precision_bound(r, nbar, 1);
        CHECK(bound >= (1.0 - 1e-6) / (2.0 * dk));
    }
}

TEST_CASE("quadrature variances match the gaussian benchmarks", "[metrology]") {
    StateVector vac = StateVector::vacuum(1, 4);
    CHECK(std::abs(photonic::quadrature_variance(vac, Quadrature::X) - 0.5) < 1e-12);
    CHECK(std::abs(photonic::quadrature_variance(vac, Quadrature::Y) - 0.5) < 1e-12);

    StateVector coh = photonic::coherent_state(complexd(1.3, 0.4), 40);
    CHECK(std::abs(photonic::quadrature_variance(coh, Quadrature::X) - 0.5) < 1e-9);
    CHECK(std::abs(photonic::quadrature_variance(coh, Quadrature::Y) - 0.5) < 1e-9);

    StateVector sq = photonic::squeezed_vacuum_state(0.5, 50);
    CHECK(std::abs(photonic::quadrature_variance(sq, Quadrature::X) - std::exp(-1.0) / 2.0) <
          1e-4);
    CHECK(std::abs(photonic::quadrature_variance(sq, Quadrature::Y) - std::exp(1.0) / 2.0) <
          1e-3);
}

TEST_CASE("squeezed vacuum stays a minimum-uncertainty state", "[metrology]") {
    for (double r : {0.2, 0.5, 0.8, 1.0}) {
        StateVector sq = photonic::squeezed_vacuum_state(r, 60);
        double vx = photonic::quadrature_variance(sq, Quadrature::X);
        double vy = photonic::quadrature_variance(sq, Quadrature::Y);
        CHECK(std::abs(vx * vy - 0.25) < 1e-6);
    }
}

TEST_CASE("random states obey the quadrature uncertainty relation", "[metrology]") {
    SplitMix64 rng(0x0D1CE);
    for (int trial = 0; trial < 20; ++trial) {
        StateVector sv = random_single_mode(rng, 6);
        double vx = photonic::quadrature_variance(sv, Quadrature::X);
        double vy = photonic::quadrature_variance(sv, Quadrature::Y);
        CHECK(std::sqrt(vx * vy) >= 0.5 - 1e-9);
    }
}

TEST_CASE("squeezed precision bound evaluates and is monotone", "[metrology]") {
    CHECK(std::abs(photonic::squeezed_precision_bound(0.0, 100.0, 1) - 0.1) < 1e-15);
    CHECK(std::abs(photonic::squeezed_precision_bound(std::log(2.0), 100.0, 1) - 0.05) <
          1e-15);
    double prev = 1e9;
    for (double r : {0.0, 0.3, 0.6}) {
        double b = photonic::squeezed_precision_bound(r, 50.0, 10);
        CHECK(b < prev);
        prev = b;
    }
    CHECK(photonic::squeezed_precision_bound(0.5, 50.0, 10) >
          photonic::squeezed_precision_bound(0.5, 80.0, 10));
    CHECK(photonic::squeezed_precision_bound(0.5, 50.0, 10) >
          photonic::squeezed_precision_bound(0.5, 50.0, 20));
}

TEST_CASE("noiseless fringes invert to the exact slit separation", "[metrology]") {
    double lambda = 600e-9;
    double screen = 50e-3;
    double d = 5e-6;
    PrecisionEstimate est = photonic::micrometer_estimate(lambda, screen, d, 0.0, 1);
    CHECK_FALSE(est.singular);
    CHECK(std::abs(est.estimate / d - 1.0) < 1e-9);
    CHECK(est.std_error == 0.0);
}

TEST_CASE("photon-starved fringes carry a few-hundred-nanometer error", "[metrology]") {
    double lambda = 600e-9;
    double screen = 50e-3;
    double d = 5e-6;
    PrecisionEstimate est = photonic::micrometer_estimate(lambda, screen, d, 2.0e5, 404);
    CHECK(est.std_error > 0.0);
    CHECK(est.std_error < lambda);
    CHECK(std::abs(est.estimate - d) < 6.0 * std::max(est.std_error, lambda / 50.0));
}

TEST_CASE("micrometer error shrinks with the photon budget", "[metrology]") {
    double lambda = 600e-9;
    double screen = 50e-3;
    double d = 5e-6;
    double err_lo = 0.0;
    double err_hi = 0.0;
    for (std::uint64_t s = 0; s < 4; ++s) {
        err_lo += photonic::micrometer_estimate(lambda, screen, d, 4.0e4,
                                                photonic::derive_seed(55, s))
                      .std_error;
        err_hi += photonic::micrometer_estimate(lambda, screen, d, 6.4e5,
                                                photonic::derive_seed(56, s))
                      .std_error;
    }
    double ratio = err_lo / err_hi;  // expected sqrt(16) = 4
    CHECK(ratio > 2.2);
    CHECK(ratio < 7.0);
}

TEST_CASE("sub-wavelength separations flag the zero-fringe regime", "[metrology]") {
    PrecisionEstimate est =
        photonic::micrometer_estimate(600e-9, 50e-3, 0.2e-6, 0.0, 3);
    CHECK(est.singular);
    CHECK_THROWS_AS(photonic::micrometer_estimate(-1.0, 1.0, 1.0, 0.0, 1),
                    std::invalid_argument);
}

TEST_CASE("double-slit intensity has the textbook landmarks", "[metrology]") {
    DoubleSlitGeometry g;
    g.slit_width = 40e-6;
    g.separation = 250e-6;
    g.distance = 1.0;
    g.wavelength = 600e-9;
    CHECK(std::abs(photonic::double_slit_intensity(g, 0.0) - 1.0) < 1e-15);
    double first_zero = g.distance * g.wavelength / (2.0 * g.separation);
    CHECK(photonic::double_slit_intensity(g, first_zero) < 1e-20);
    CHECK(photonic::double_slit_intensity(g, 0.4 * first_zero) > 0.1);
}

TEST_CASE("sampled photons reproduce the double-slit curve", "[metrology]") {
    DoubleSlitGeometry g;
    g.slit_width = 40e-6;
    g.separation = 250e-6;
    g.distance = 1.0;
    g.wavelength = 600e-9;
    double w = 3.0e-3;
    DoubleSlitSampler sampler(g, w);
    SplitMix64 rng(0x2511);

    const int bins = 50;
    const int photons = 100000;
    std::vector<int> hist(bins, 0);
    for (int i = 0; i < photons; ++i) {
        double x = sampler.sample(rng);
        int b = static_cast<int>((x + w) / (2.0 * w) * bins);
        b = std::clamp(b, 0, bins - 1);
        hist[static_cast<std::size_t>(b)]++;
    }

    // Expected bin masses from a fine subgrid of the analytic curve.
    std::vector<double> expected(bins, 0.0);
    double total = 0.0;
    const int sub = 20;
    for (int b = 0; b < bins; ++b) {
        for (int s = 0; s < sub; ++s) {
            double x = -w + (b + (s + 0.5) / sub) * 2.0 * w / bins;
            expected[static_cast<std::size_t>(b)] += photonic::double_slit_intensity(g, x);
        }
        total += expected[static_cast<std::size_t>(b)];
    }
    for (auto& e : expected) {
        e *= photons / total;
    }

    // Merge bins until each expected count is comfortable, then chi-squared.
    std::vector<double> exp_merged;
    std::vector<double> obs_merged;
    double e_acc = 0.0;
    double o_acc = 0.0;
    for (int b = 0; b < bins; ++b) {
        e_acc += expected[static_cast<std::size_t>(b)];
        o_acc += hist[static_cast<std::size_t>(b)];
        if (e_acc >= 10.0) {
            exp_merged.push_back(e_acc);
            obs_merged.push_back(o_acc);
            e_acc = 0.0;
            o_acc = 0.0;
        }
    }
    if (e_acc > 0.0 && !exp_merged.empty()) {
        exp_merged.back() += e_acc;
        obs_merged.back() += o_acc;
    }
    double chi2 = 0.0;
    for (std::size_t i = 0; i < exp_merged.size(); ++i) {
        double diff = obs_merged[i] - exp_merged[i];
        chi2 += diff * diff / exp_merged[i];
    }
    int dof = static_cast<int>(exp_merged.size()) - 1;
    REQUIRE(dof >= 10);
    CHECK(chi2 < chi2_quantile_95(dof));
}

TEST_CASE("line fits recover planted slopes", "[metrology]") {
    std::vector<double> xs{1.0, 2.0, 3.0, 4.0};
    std::vector<double> ys{2.5, 4.5, 6.5, 8.5};
    LineFit fit = photonic::fit_line(xs, ys);
    CHECK(std::abs(fit.slope - 2.0) < 1e-12);
    CHECK(std::abs(fit.intercept - 0.5) < 1e-12);
    CHECK(std::abs(fit.r2 - 1.0) < 1e-12);
    CHECK_THROWS_AS(photonic::fit_line({1.0}, {2.0}), std::invalid_argument);
}

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

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "photonic/elements.hpp"
#include "photonic/fock.hpp"
#include "photonic/rng.hpp"

namespace photonic {

// Photon-count distribution over a finite support.
struct CountDistribution {
    std::map<int, double> pmf;
    double mean = 0.0;
    std::string label;
};

// lambda^n e^{-lambda} / n!, evaluated in log space so large n does not
// overflow the factorial.
inline double poisson_pmf(double lambda, int n) {
    if (lambda < 0.0 || n < 0) {
        throw std::invalid_argument("poisson_pmf: need lambda >= 0 and n >= 0");
    }
    if (lambda == 0.0) {
        return n == 0 ? 1.0 : 0.0;
    }
    return std::exp(n * std::log(lambda) - lambda - std::lgamma(n + 1.0));
}

// Single-mode Bose-Einstein (geometric) distribution with mean nbar:
// nbar^n / (1 + nbar)^{n+1}.
inline double thermal_pmf(double nbar, int n) {
    if (nbar < 0.0 || n < 0) {
        throw std::invalid_argument("thermal_pmf: need nbar >= 0 and n >= 0");
    }
    if (nbar == 0.0) {
        return n == 0 ? 1.0 : 0.0;
    }
    return std::exp(n * std::log(nbar) - (n + 1.0) * std::log1p(nbar));
}

inline CountDistribution poisson_distribution(double lambda, int n_max = -1) {
    if (lambda < 0.0) {
        throw std::invalid_argument("poisson_distribution: negative mean");
    }
    if (n_max < 0) {
        n_max = static_cast<int>(std::ceil(lambda + 20.0 * std::sqrt(lambda + 1.0))) + 20;
    }
    CountDistribution d;
    d.mean = lambda;
    d.label = "poisson";
    for (int n = 0; n <= n_max; ++n) {
        d.pmf[n] = poisson_pmf(lambda, n);
    }
    return d;
}

inline CountDistribution thermal_distribution(double nbar, int n_max = -1) {
    if (nbar < 0.0) {
        throw std::invalid_argument("thermal_distribution: negative mean");
    }
    if (n_max < 0) {
        // Geometric tail: ratio r = nbar/(1+nbar); choose support so the
        // remainder is below 1e-12.
        double r = nbar / (1.0 + nbar);
        n_max = (r > 0.0) ? static_cast<int>(std::ceil(-12.0 * std::numbers::ln10 /
                                                       std::log(r))) + 2
                          : 1;
    }
    CountDistribution d;
    d.mean = nbar;
    d.label = "thermal";
    for (int n = 0; n <= n_max; ++n) {
        d.pmf[n] = thermal_pmf(nbar, n);
    }
    return d;
}

inline CountDistribution fock_distribution(int m) {
    if (m < 0) {
        throw std::invalid_argument("fock_distribution: negative photon number");
    }
    CountDistribution d;
    d.mean = m;
    d.label = "fock";
    d.pmf[m] = 1.0;
    return d;
}

// Second-order correlation at zero delay, <n(n-1)>/<n>^2: the coincidence-
// to-singles ratio a 50:50 split-and-count measurement converges to.
inline double g2_zero(const CountDistribution& dist) {
    double n1 = 0.0;
    double n2 = 0.0;
    for (const auto& [n, p] : dist.pmf) {
        n1 += n * p;
        n2 += static_cast<double>(n) * (n - 1.0) * p;
    }
    if (n1 <= 0.0) {
        throw std::invalid_argument("g2_zero: zero mean photon number");
    }
    return n2 / (n1 * n1);
}

// Same statistic read off a state's exact number marginal in one mode.
inline double g2_zero(const StateVector& sv, int mode) {
    check_mode(sv, mode, "g2_zero");
    double n1 = 0.0;
    double n2 = 0.0;
    for (const auto& [fs, amp] : sv.amplitudes()) {
        double p = std::norm(amp);
        int n = fs.occ[static_cast<std::size_t>(mode)];
        n1 += n * p;
        n2 += static_cast<double>(n) * (n - 1.0) * p;
    }
    if (n1 <= 0.0) {
        throw std::invalid_argument("g2_zero: zero mean photon number");
    }
    return n2 / (n1 * n1);
}

struct CurvePoint {
    double tau = 0.0;
    double value = 0.0;
};

// Parametric interpolation between the zero-delay value and the long-delay
// Poisson limit: g2(tau) = 1 + (g2(0) - 1) e^{-2|tau|/tau_c}. A data-file
// generator, not a physical claim about any specific source.
inline std::vector<CurvePoint> g2_curve(double g2_at_zero, double tau_c,
                                        const std::vector<double>& taus) {
    if (tau_c <= 0.0) {
        throw std::invalid_argument("g2_curve: coherence time must be positive");
    }
    std::vector<CurvePoint> out;
    out.reserve(taus.size());
    for (double tau : taus) {
        out.push_back({tau, 1.0 + (g2_at_zero - 1.0) * std::exp(-2.0 * std::abs(tau) / tau_c)});
    }
    return out;
}

// Gaussian wave-packet overlap between two packets offset by a delay.
struct WavePacketOverlap {
    double delay = 0.0;
    double coherence_time = 1.0;
    complexd overlap = 1.0;

    static WavePacketOverlap gaussian(double tau, double tau_c) {
        if (tau_c <= 0.0) {
            throw std::invalid_argument("WavePacketOverlap: coherence time must be positive");
        }
        WavePacketOverlap w;
        w.delay = tau;
        w.coherence_time = tau_c;
        w.overlap = std::exp(-tau * tau / (2.0 * tau_c * tau_c));
        return w;
    }
};

// Coincidence probability for two single photons meeting on a 50:50 beam
// splitter: 1/2 (1 - |overlap|^2). Zero for identical packets, 1/2 for fully
// distinguishable ones.
inline double hom_coincidence(double tau, double tau_c) {
    WavePacketOverlap w = WavePacketOverlap::gaussian(tau, tau_c);
    return 0.5 * (1.0 - std::norm(w.overlap));
}

// Coincidence probability when one input is a single photon and the other a
// weak coherent field, with the given packet overlap. Four modes: each
// spatial port carries the photon-matched packet and the orthogonal
// remainder; the coherent field factorizes over that packet pair. Computed
// by exact truncated Fock simulation.
inline double hom_photon_coherent_coincidence(double overlap, double nbar, int cutoff = 8) {
    if (overlap < 0.0 || overlap > 1.0) {
        throw std::invalid_argument("hom_photon_coherent_coincidence: overlap outside [0, 1]");
    }
    if (nbar < 0.0) {
        throw std::invalid_argument("hom_photon_coherent_coincidence: negative mean count");
    }
    if (cutoff < 1) {
        throw std::invalid_argument("hom_photon_coherent_coincidence: cutoff must be >= 1");
    }
    double alpha = std::sqrt(nbar);
    double a_par = alpha * overlap;
    double a_perp = alpha * std::sqrt(std::max(0.0, 1.0 - overlap * overlap));

    // Mode order: (port1-par, port1-perp, port2-par, port2-perp); the photon
    // occupies port1-par, the coherent field splits over the port-2 pair.
    auto coherent_amp = [](double a, int n) {
        if (a == 0.0) {
            return n == 0 ? 1.0 : 0.0;
        }
        return std::exp(-a * a / 2.0 + n * std::log(a) - 0.5 * std::lgamma(n + 1.0));
    };
    AmplitudeMap amps;
    for (int j = 0; j + 1 <= cutoff; ++j) {
        for (int k = 0; j + k + 1 <= cutoff; ++k) {
            double c = coherent_amp(a_par, j) * coherent_amp(a_perp, k);
            if (c != 0.0) {
                amps[FockState({1, 0, j, k})] = c;
            }
        }
    }
    StateVector sv = StateVector::from_amplitudes(4, cutoff, amps);
    sv = apply_beam_splitter(sv, 0, 2, std::numbers::pi / 4.0);
    sv = apply_beam_splitter(sv, 1, 3, std::numbers::pi / 4.0);

    double p = 0.0;
    for (const auto& [fs, amp] : sv.amplitudes()) {
        int port1 = fs.occ[0] + fs.occ[1];
        int port2 = fs.occ[2] + fs.occ[3];
        if (port1 >= 1 && port2 >= 1) {
            p += std::norm(amp);
        }
    }
    return p;
}

enum class HomInput { SinglePhotonPair, PhotonCoherent };

inline double hom_coincidence(double tau, double tau_c, HomInput kind, double nbar = 0.1,
                              int cutoff = 8) {
    switch (kind) {
        case HomInput::SinglePhotonPair:
            return hom_coincidence(tau, tau_c);
        case HomInput::PhotonCoherent: {
            WavePacketOverlap w = WavePacketOverlap::gaussian(tau, tau_c);
            return hom_photon_coherent_coincidence(std::abs(w.overlap), nbar, cutoff);
        }
    }
    throw std::invalid_argument("hom_coincidence: unknown input kind");
}

// Inverse-CDF draw from a count distribution.
inline int sample_count(const CountDistribution& dist, SplitMix64& rng) {
    if (dist.pmf.empty()) {
        throw std::invalid_argument("sample_count: empty distribution");
    }
    double total = 0.0;
    for (const auto& [n, p] : dist.pmf) {
        total += p;
    }
    double u = rng.next_double() * total;
    double acc = 0.0;
    int last = 0;
    for (const auto& [n, p] : dist.pmf) {
        acc += p;
        last = n;
        if (u < acc) {
            return n;
        }
    }
    return last;
}

}  // namespace photonic

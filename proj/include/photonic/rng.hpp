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

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace photonic {

// All randomness in this library flows through SplitMix64 (Steele/Lea/Flood,
// as in Vigna's reference implementation). The generator is counter-based:
// output k of seed s equals mix64(s + (k+1)*kGolden), so independent streams
// are obtained by re-seeding with derive_seed(master, k). Changing how many
// streams are consumed never changes the draws of an already-derived stream.
//
// Sampling helpers are implemented here from uniform bits instead of
// <random> distributions, whose output sequences differ across standard
// library implementations.

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    return mix64(master + (stream + 1) * kGolden);
}

class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += kGolden;
        return mix64(state_);
    }

    // Uniform in [0, 1) with 53-bit resolution.
    double next_double() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    // Uniform integer in [0, n). Lemire's multiply-shift with rejection.
    std::uint64_t next_below(std::uint64_t n) {
        if (n == 0) {
            throw std::invalid_argument("next_below: n must be positive");
        }
        __uint128_t m = static_cast<__uint128_t>(next()) * n;
        auto lo = static_cast<std::uint64_t>(m);
        if (lo < n) {
            std::uint64_t threshold = (0 - n) % n;
            while (lo < threshold) {
                m = static_cast<__uint128_t>(next()) * n;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    bool next_bernoulli(double p) {
        return next_double() < p;
    }

    // Standard normal via Box-Muller (two fresh uniforms per call; no cache,
    // to keep the draw count a simple function of the call count).
    double next_normal() {
        double u1 = 1.0 - next_double();  // (0, 1]
        double u2 = next_double();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * std::numbers::pi * u2);
    }

    // Poisson by Knuth inversion in chunks of rate <= 30; chunk sums are
    // exact by additivity, avoiding exp underflow at large rates.
    int next_poisson(double lambda) {
        if (lambda < 0.0 || !std::isfinite(lambda)) {
            throw std::invalid_argument("next_poisson: invalid rate");
        }
        int total = 0;
        while (lambda > 30.0) {
            total += poisson_knuth(30.0);
            lambda -= 30.0;
        }
        return total + poisson_knuth(lambda);
    }

    int next_binomial(int n, double p) {
        int k = 0;
        for (int i = 0; i < n; ++i) {
            if (next_bernoulli(p)) {
                ++k;
            }
        }
        return k;
    }

    // Index sampled from an (unnormalized) nonnegative weight vector.
    std::size_t next_discrete(const std::vector<double>& weights) {
        double total = 0.0;
        for (double w : weights) {
            if (w < 0.0) {
                throw std::invalid_argument("next_discrete: negative weight");
            }
            total += w;
        }
        if (total <= 0.0) {
            throw std::invalid_argument("next_discrete: zero total weight");
        }
        double r = next_double() * total;
        double cum = 0.0;
        for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
            cum += weights[i];
            if (r < cum) {
                return i;
            }
        }
        return weights.size() - 1;
    }

  private:
    int poisson_knuth(double lambda) {
        double limit = std::exp(-lambda);
        double prod = 1.0;
        int k = 0;
        do {
            ++k;
            prod *= next_double();
        } while (prod > limit);
        return k - 1;
    }

    std::uint64_t state_;
};

inline SplitMix64 derive_stream(std::uint64_t master, std::uint64_t stream) {
    return SplitMix64(derive_seed(master, stream));
}

}  // namespace photonic

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
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "photonic/measurement.hpp"
#include "photonic/polarization.hpp"
#include "photonic/rng.hpp"

namespace photonic {

// Fiber segment with exponential attenuation.
struct ChannelModel {
    double length_km = 0.0;
    double attenuation_km = 1.0;

    ChannelModel(double length, double attenuation)
        : length_km(length), attenuation_km(attenuation) {
        if (length < 0.0 || attenuation <= 0.0) {
            throw std::invalid_argument("ChannelModel: need length >= 0, attenuation > 0");
        }
    }

    double transmission() const { return std::exp(-length_km / attenuation_km); }
};

// Output of the would-be copier and its overlap with a perfect clone.
struct CloneResult {
    StateVector output;
    double fidelity = 0.0;
};

// Linear extension of the H/V duplicator: |H>|H> -> |H>|H>, |V>|H> -> |V>|V>.
// The machine copies the basis states perfectly, but linearity forces every
// superposition onto an entangled output instead of a product of two copies.
// Returned fidelity is |<psi,psi|output>|^2.
inline CloneResult clone_attempt(const JonesVector& input) {
    Rail src{0, 1};
    Rail dst{2, 3};
    PolarizationRegister reg({src, dst});
    StateVector in = product_state(4, 2, reg, {input, jones_h()});

    StateVector out(4, 2);
    for (const auto& [fs, amp] : in.amplitudes()) {
        FockState target = fs;
        if (target.occ[1] == 1 && target.occ[2] == 1) {
            target.occ[2] = 0;
            target.occ[3] = 1;
        }
        out.accumulate(target, amp);
    }

    StateVector ideal = product_state(4, 2, reg, {input, input});
    double f = std::norm(inner_product(ideal, out));
    return {std::move(out), f};
}

enum class Eavesdropper { None, InterceptResend };

// Sifted-key accounting for one protocol run. final_key holds the receiver's
// sifted bits that were not sacrificed for error estimation.
struct KeyStats {
    long pulses_sent = 0;
    long received = 0;
    long sifted_bits = 0;
    double sift_rate = 0.0;
    long sampled_bits = 0;
    double sampled_qber = 0.0;
    std::vector<int> final_key;
};

// Four-state protocol over a lossy channel. Alice prepares uniformly random
// states from {H, V, L, R}; Bob measures in a uniformly random basis (H/V or
// L/R). Lost pulses are announced as failed transmissions and discarded, so
// loss causes erasures, never bit errors. Matching-basis rounds are sifted;
// a fraction of the sifted bits is sacrificed to estimate the error rate and
// removed from the key.
//
// Every pulse consumes its own derived random stream (master seed + pulse
// index), so runs can be merged or replayed independently; the sacrifice
// selection uses the stream one past the last pulse.
inline KeyStats bb84_run(long n_pulses, Eavesdropper eve, const ChannelModel& channel,
                         double sample_fraction, std::uint64_t seed) {
    if (n_pulses < 1) {
        throw std::invalid_argument("bb84_run: need at least one pulse");
    }
    if (sample_fraction < 0.0 || sample_fraction >= 1.0) {
        throw std::invalid_argument("bb84_run: sample_fraction must lie in [0, 1)");
    }

    Rail rail{0, 1};
    const PolarizationBasis hv = PolarizationBasis::hv();
    const PolarizationBasis lr = PolarizationBasis::lr();
    double transmission = channel.transmission();

    auto basis_vector = [&](bool lr_basis, int bit) {
        if (lr_basis) {
            return bit ? jones_right() : jones_left();
        }
        return bit ? jones_v() : jones_h();
    };

    KeyStats stats;
    stats.pulses_sent = n_pulses;
    std::vector<int> alice_sifted;
    std::vector<int> bob_sifted;

    for (long i = 0; i < n_pulses; ++i) {
        SplitMix64 rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
        int alice_bit = rng.next_bernoulli(0.5) ? 1 : 0;
        bool alice_lr = rng.next_bernoulli(0.5);
        StateVector pulse = polarized_photon(2, 1, rail, basis_vector(alice_lr, alice_bit));

        if (eve == Eavesdropper::InterceptResend) {
            bool eve_lr = rng.next_bernoulli(0.5);
            const PolarizationBasis& basis = eve_lr ? lr : hv;
            auto recs = measure_polarization(pulse, rail, basis);
            int eve_bit = rng.next_bernoulli(recs[1].probability) ? 1 : 0;
            pulse = polarized_photon(2, 1, rail, basis_vector(eve_lr, eve_bit));
        }

        if (!rng.next_bernoulli(transmission)) {
            continue;  // failed transmission, announced and discarded
        }
        stats.received += 1;

        bool bob_lr = rng.next_bernoulli(0.5);
        const PolarizationBasis& basis = bob_lr ? lr : hv;
        auto recs = measure_polarization(pulse, rail, basis);
        int bob_bit = rng.next_bernoulli(recs[1].probability) ? 1 : 0;

        if (bob_lr == alice_lr) {
            alice_sifted.push_back(alice_bit);
            bob_sifted.push_back(bob_bit);
        }
    }

    stats.sifted_bits = static_cast<long>(bob_sifted.size());
    stats.sift_rate =
        static_cast<double>(stats.sifted_bits) / static_cast<double>(n_pulses);

    SplitMix64 sample_rng(derive_seed(seed, static_cast<std::uint64_t>(n_pulses)));
    long errors = 0;
    for (std::size_t b = 0; b < bob_sifted.size(); ++b) {
        if (sample_rng.next_bernoulli(sample_fraction)) {
            stats.sampled_bits += 1;
            if (alice_sifted[b] != bob_sifted[b]) {
                ++errors;
            }
        } else {
            stats.final_key.push_back(bob_sifted[b]);
        }
    }
    stats.sampled_qber =
        (stats.sampled_bits > 0)
            ? static_cast<double>(errors) / static_cast<double>(stats.sampled_bits)
            : 0.0;
    return stats;
}

// One teleportation run. For the passive analyzer, bell_label may be "fail"
// (probability 1/2) with no corrected state.
struct TeleportOutcome {
    std::string bell_label;
    std::string correction;
    std::optional<StateVector> corrected_state;
};

namespace detail {

// Pauli associated with each Bell state relative to phi+:
// |B> = (P (x) 1)|phi+> up to global phase.
inline Eigen::Matrix2cd bell_pauli(BellKind kind) {
    switch (kind) {
        case BellKind::PhiPlus: return Eigen::Matrix2cd::Identity();
        case BellKind::PhiMinus: return pauli_z_matrix();
        case BellKind::PsiPlus: return pauli_x_matrix();
        case BellKind::PsiMinus: return pauli_x_matrix() * pauli_z_matrix();
    }
    throw std::invalid_argument("bell_pauli: unknown kind");
}

inline BellKind bell_from_label(const std::string& label) {
    if (label == "phi+") return BellKind::PhiPlus;
    if (label == "phi-") return BellKind::PhiMinus;
    if (label == "psi+") return BellKind::PsiPlus;
    if (label == "psi-") return BellKind::PsiMinus;
    throw std::invalid_argument("bell_from_label: " + label);
}

// Names a product of the four correction Paulis, up to sign.
inline std::string classify_pauli(const Eigen::Matrix2cd& m) {
    struct Named {
        const char* name;
        Eigen::Matrix2cd mat;
    };
    const Named table[] = {{"I", Eigen::Matrix2cd::Identity()},
                           {"Z", pauli_z_matrix()},
                           {"X", pauli_x_matrix()},
                           {"XZ", pauli_x_matrix() * pauli_z_matrix()}};
    for (const Named& entry : table) {
        if ((m - entry.mat).cwiseAbs().maxCoeff() < 1e-12 ||
            (m + entry.mat).cwiseAbs().maxCoeff() < 1e-12) {
            return entry.name;
        }
    }
    throw std::invalid_argument("classify_pauli: not a correction operator");
}

}  // namespace detail

// Teleports a polarization qubit through a shared Bell pair. The sender
// holds the input (rail 0) and one half of the pair (rail 1); the receiver
// holds rail 2. A Bell measurement on rails (0, 1) collapses the receiver's
// photon onto the input state up to a Pauli named by the outcome:
// phi+ -> I, phi- -> Z, psi+ -> X, psi- -> XZ for the phi+ resource. Other
// resource states compose their own Pauli with the outcome's.
inline TeleportOutcome teleport(const JonesVector& input, BellKind resource,
                                BellAnalyzer analyzer, std::uint64_t seed) {
    Rail r0{0, 1};
    Rail r1{2, 3};
    StateVector qubit = polarized_photon(2, 1, r0, input);
    StateVector pair = bell_state(4, 2, Rail{0, 1}, Rail{2, 3}, resource);
    StateVector joint = tensor(qubit, pair);

    auto records = bell_measure(joint, r0, r1, analyzer);
    SplitMix64 rng(seed);
    double u = rng.next_double();
    double acc = 0.0;
    const MeasurementRecord* chosen = &records.back();
    for (const MeasurementRecord& rec : records) {
        acc += rec.probability;
        if (u < acc) {
            chosen = &rec;
            break;
        }
    }

    TeleportOutcome out;
    out.bell_label = chosen->outcome;
    if (chosen->outcome == "fail" || !chosen->post_state.has_value()) {
        return out;
    }

    Eigen::Matrix2cd correction =
        detail::bell_pauli(detail::bell_from_label(chosen->outcome)) *
        detail::bell_pauli(resource);
    out.correction = detail::classify_pauli(correction);
    // Receiver's rail is the only one left after the analyzer consumed four
    // modes.
    out.corrected_state = apply_two_mode(*chosen->post_state, 0, 1, correction);
    return out;
}

// Rates for direct transmission versus a segmented chain with entanglement
// swapping. Time is slotted: every unestablished segment retries each slot
// with the single-segment survival probability; once all segments hold
// entanglement, the swaps run left to right, each succeeding with
// probability swap_success. A failed swap discards everything up to and
// including its position; a completed chain delivers one pair and resets.
struct RepeaterResult {
    double direct_rate = 0.0;
    double repeater_rate = 0.0;
    long successes = 0;
    long slots = 0;
};

inline RepeaterResult repeater_rate(double total_length, int segments,
                                    double attenuation_length, double swap_success,
                                    std::uint64_t seed, long slots = 100000) {
    if (segments < 1) {
        throw std::invalid_argument("repeater_rate: need at least one segment");
    }
    if (total_length <= 0.0 || attenuation_length <= 0.0) {
        throw std::invalid_argument("repeater_rate: lengths must be positive");
    }
    if (swap_success <= 0.0 || swap_success > 1.0) {
        throw std::invalid_argument("repeater_rate: swap_success must lie in (0, 1]");
    }
    if (slots < 1) {
        throw std::invalid_argument("repeater_rate: need at least one slot");
    }

    RepeaterResult result;
    result.slots = slots;
    result.direct_rate = std::exp(-total_length / attenuation_length);
    double p_segment = std::exp(-total_length / (segments * attenuation_length));

    SplitMix64 rng(seed);
    std::vector<char> established(static_cast<std::size_t>(segments), 0);
    for (long slot = 0; slot < slots; ++slot) {
        bool all = true;
        for (char& e : established) {
            if (!e) {
                e = rng.next_bernoulli(p_segment) ? 1 : 0;
            }
            all = all && e;
        }
        if (!all) {
            continue;
        }
        bool delivered = true;
        for (int j = 0; j + 1 < segments; ++j) {
            if (!rng.next_bernoulli(swap_success)) {
                // The fused block up to segment j collapses with the swap.
                for (int m = 0; m <= j; ++m) {
                    established[static_cast<std::size_t>(m)] = 0;
                }
                delivered = false;
                break;
            }
        }
        if (delivered) {
            result.successes += 1;
            std::fill(established.begin(), established.end(), 0);
        }
    }
    result.repeater_rate =
        static_cast<double>(result.successes) / static_cast<double>(slots);
    return result;
}

}  // namespace photonic

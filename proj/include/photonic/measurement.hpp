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
#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "photonic/elements.hpp"
#include "photonic/fock.hpp"
#include "photonic/polarization.hpp"
#include "photonic/rng.hpp"

namespace photonic {

// One branch of a projective measurement. post_state is renormalized and is
// absent when the branch has zero probability, or when the detection
// consumed every mode of the register (nothing is left to describe).
struct MeasurementRecord {
    std::string outcome;
    double probability = 0.0;
    std::optional<StateVector> post_state;
};

namespace detail {

// Occupation vector with the listed (ascending, distinct) modes erased.
inline FockState drop_modes(const FockState& fs, const std::vector<int>& sorted_modes) {
    std::vector<int> occ;
    occ.reserve(fs.occ.size() - sorted_modes.size());
    std::size_t k = 0;
    for (std::size_t m = 0; m < fs.occ.size(); ++m) {
        if (k < sorted_modes.size() &&
            sorted_modes[k] == static_cast<int>(m)) {
            ++k;
            continue;
        }
        occ.push_back(fs.occ[m]);
    }
    return FockState(occ);
}

inline std::string counts_label(const std::vector<int>& counts) {
    std::string s;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        if (i) {
            s += ",";
        }
        s += std::to_string(counts[i]);
    }
    return s;
}

}  // namespace detail

// Probability of finding exactly n photons in one mode.
inline double number_probability(const StateVector& sv, int mode, int n) {
    check_mode(sv, mode, "number_probability");
    if (n < 0) {
        throw std::invalid_argument("number_probability: n must be >= 0");
    }
    double p = 0.0;
    for (const auto& [fs, amp] : sv.amplitudes()) {
        if (fs.occ[static_cast<std::size_t>(mode)] == n) {
            p += std::norm(amp);
        }
    }
    return p;
}

// Projects onto exactly n photons in `mode` without absorbing them: the mode
// stays in the register. This is the variant to use when the same quantity
// will be measured again (repeatability checks, cascaded heralds on shared
// ancillas).
inline MeasurementRecord project_number(const StateVector& sv, int mode, int n) {
    double p = number_probability(sv, mode, n);
    MeasurementRecord rec{std::to_string(n), p, std::nullopt};
    if (p <= 0.0) {
        return rec;
    }
    StateVector post(sv.mode_count(), sv.cutoff());
    post.add_truncation_loss(sv.truncation_loss());
    double scale = 1.0 / std::sqrt(p);
    for (const auto& [fs, amp] : sv.amplitudes()) {
        if (fs.occ[static_cast<std::size_t>(mode)] == n) {
            post.accumulate(fs, amp * scale);
        }
    }
    rec.post_state = std::move(post);
    return rec;
}

// Joint projective detection: the listed modes are found with the given
// photon counts and are removed from the register (the photons are
// absorbed). The post state lives on the remaining modes.
inline MeasurementRecord detect_pattern(const StateVector& sv, std::vector<int> modes,
                                        std::vector<int> counts) {
    if (modes.empty() || modes.size() != counts.size()) {
        throw std::invalid_argument("detect_pattern: need matching modes and counts");
    }
    std::vector<std::size_t> order(modes.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        order[i] = i;
    }
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return modes[a] < modes[b]; });
    std::vector<int> sorted_modes;
    std::vector<int> sorted_counts;
    for (std::size_t i : order) {
        check_mode(sv, modes[i], "detect_pattern");
        if (counts[i] < 0) {
            throw std::invalid_argument("detect_pattern: negative count");
        }
        sorted_modes.push_back(modes[i]);
        sorted_counts.push_back(counts[i]);
    }
    if (std::adjacent_find(sorted_modes.begin(), sorted_modes.end()) != sorted_modes.end()) {
        throw std::invalid_argument("detect_pattern: repeated mode");
    }

    AmplitudeMap residual;
    double p = 0.0;
    for (const auto& [fs, amp] : sv.amplitudes()) {
        bool match = true;
        for (std::size_t i = 0; i < sorted_modes.size(); ++i) {
            if (fs.occ[static_cast<std::size_t>(sorted_modes[i])] != sorted_counts[i]) {
                match = false;
                break;
            }
        }
        if (!match) {
            continue;
        }
        p += std::norm(amp);
        residual[detail::drop_modes(fs, sorted_modes)] += amp;
    }

    MeasurementRecord rec{detail::counts_label(counts), p, std::nullopt};
    if (p <= 0.0 || sorted_modes.size() == static_cast<std::size_t>(sv.mode_count())) {
        return rec;
    }
    int remaining = sv.mode_count() - static_cast<int>(sorted_modes.size());
    StateVector post(remaining, sv.cutoff());
    post.add_truncation_loss(sv.truncation_loss());
    double scale = 1.0 / std::sqrt(p);
    for (const auto& [fs, amp] : residual) {
        post.accumulate(fs, amp * scale);
    }
    rec.post_state = std::move(post);
    return rec;
}

// Destructive single-mode detection: n photons seen, mode removed.
inline MeasurementRecord detect_number(const StateVector& sv, int mode, int n) {
    return detect_pattern(sv, {mode}, {n});
}

// A two-outcome polarization basis: two orthonormal Jones vectors with
// outcome labels.
struct PolarizationBasis {
    JonesVector first;
    JonesVector second;
    std::string first_label;
    std::string second_label;

    static PolarizationBasis hv() { return {jones_h(), jones_v(), "H", "V"}; }
    static PolarizationBasis lr() { return {jones_left(), jones_right(), "L", "R"}; }
    // (|H> +- e^{i alpha}|V>)/sqrt2.
    static PolarizationBasis tilted(double alpha) {
        return {jones_plus(alpha), jones_minus(alpha), "+", "-"};
    }
};

namespace detail {

// Unnormalized residual amplitudes over the remaining modes after projecting
// the rail onto the single-photon Jones state `jv`.
inline AmplitudeMap rail_projection_residual(const StateVector& sv, const Rail& rail,
                                             const JonesVector& jv,
                                             const std::vector<int>& sorted_rail_modes) {
    AmplitudeMap residual;
    for (const auto& [fs, amp] : sv.amplitudes()) {
        int nh = fs.occ[static_cast<std::size_t>(rail.h)];
        int nv = fs.occ[static_cast<std::size_t>(rail.v)];
        complexd coeff;
        if (nh == 1 && nv == 0) {
            coeff = std::conj(jv.h);
        } else if (nh == 0 && nv == 1) {
            coeff = std::conj(jv.v);
        } else {
            throw std::invalid_argument(
                "measure_polarization: rail does not hold exactly one photon");
        }
        residual[drop_modes(fs, sorted_rail_modes)] += coeff * amp;
    }
    return residual;
}

}  // namespace detail

// Destructive polarization measurement of one dual-rail qubit. Projects onto
// the two basis states; the photon is absorbed and both rail modes leave the
// register. Throws when any supported component carries other than one
// photon on the rail (an encoding violation, e.g. loss upstream).
inline std::array<MeasurementRecord, 2> measure_polarization(const StateVector& sv,
                                                             const Rail& rail,
                                                             const PolarizationBasis& basis) {
    check_mode(sv, rail.h, "measure_polarization");
    check_mode(sv, rail.v, "measure_polarization");
    std::vector<int> rail_modes{rail.h, rail.v};
    std::sort(rail_modes.begin(), rail_modes.end());

    std::array<MeasurementRecord, 2> out;
    const std::array<const JonesVector*, 2> vecs{&basis.first, &basis.second};
    const std::array<const std::string*, 2> labels{&basis.first_label, &basis.second_label};
    for (int k = 0; k < 2; ++k) {
        AmplitudeMap residual =
            detail::rail_projection_residual(sv, rail, *vecs[static_cast<std::size_t>(k)],
                                             rail_modes);
        double p = 0.0;
        for (const auto& [fs, amp] : residual) {
            p += std::norm(amp);
        }
        MeasurementRecord rec{*labels[static_cast<std::size_t>(k)], p, std::nullopt};
        if (p > 0.0 && sv.mode_count() > 2) {
            StateVector post(sv.mode_count() - 2, sv.cutoff());
            post.add_truncation_loss(sv.truncation_loss());
            double scale = 1.0 / std::sqrt(p);
            for (const auto& [fs, amp] : residual) {
                post.accumulate(fs, amp * scale);
            }
            rec.post_state = std::move(post);
        }
        out[static_cast<std::size_t>(k)] = std::move(rec);
    }
    return out;
}

// Non-destructive counterpart: the rail is projected onto a basis state but
// keeps its photon, so an immediate re-measurement in the same basis
// reproduces the outcome with certainty.
inline std::array<MeasurementRecord, 2> project_polarization(const StateVector& sv,
                                                             const Rail& rail,
                                                             const PolarizationBasis& basis) {
    std::array<MeasurementRecord, 2> destructive = measure_polarization(sv, rail, basis);
    std::array<MeasurementRecord, 2> out;
    const std::array<const JonesVector*, 2> vecs{&basis.first, &basis.second};
    std::vector<int> rail_modes{rail.h, rail.v};
    std::sort(rail_modes.begin(), rail_modes.end());
    for (int k = 0; k < 2; ++k) {
        const MeasurementRecord& d = destructive[static_cast<std::size_t>(k)];
        MeasurementRecord rec{d.outcome, d.probability, std::nullopt};
        if (d.probability > 0.0) {
            AmplitudeMap residual = detail::rail_projection_residual(
                sv, rail, *vecs[static_cast<std::size_t>(k)], rail_modes);
            const JonesVector& jv = *vecs[static_cast<std::size_t>(k)];
            StateVector post(sv.mode_count(), sv.cutoff());
            post.add_truncation_loss(sv.truncation_loss());
            double scale = 1.0 / std::sqrt(d.probability);
            for (const auto& [rest, amp] : residual) {
                // Reinsert the rail photon in the measured polarization.
                std::vector<int> occ(static_cast<std::size_t>(sv.mode_count()), 0);
                std::size_t src = 0;
                for (int m = 0; m < sv.mode_count(); ++m) {
                    if (m == rail.h || m == rail.v) {
                        continue;
                    }
                    occ[static_cast<std::size_t>(m)] = rest.occ[src++];
                }
                if (std::abs(jv.h) > 0.0) {
                    occ[static_cast<std::size_t>(rail.h)] = 1;
                    occ[static_cast<std::size_t>(rail.v)] = 0;
                    post.accumulate(FockState(occ), amp * jv.h * scale);
                }
                if (std::abs(jv.v) > 0.0) {
                    occ[static_cast<std::size_t>(rail.h)] = 0;
                    occ[static_cast<std::size_t>(rail.v)] = 1;
                    post.accumulate(FockState(occ), amp * jv.v * scale);
                }
            }
            rec.post_state = std::move(post);
        }
        out[static_cast<std::size_t>(k)] = std::move(rec);
    }
    return out;
}

enum class BellAnalyzer { Ideal, LinearOptical };

namespace detail {

inline void check_rail_photon(const StateVector& sv, const Rail& r, const char* op) {
    if (!rail_holds_one_photon(sv, r)) {
        throw std::invalid_argument(std::string(op) +
                                    ": rail does not hold exactly one photon");
    }
}

// Classifies a 4-detector click pattern (n_{1H}, n_{1V}, n_{2H}, n_{2V})
// behind the two-beam-splitter analyzer. Only the psi Bell states produce
// one H click and one V click; same-rail coincidences flag psi+, cross-rail
// coincidences flag psi-. Everything else (bunched pairs, equal
// polarizations) is ambiguous between phi+ and phi-.
inline std::string classify_bell_pattern(int n1h, int n1v, int n2h, int n2v) {
    if (n1h + n1v + n2h + n2v != 2) {
        return "fail";
    }
    int h_clicks = n1h + n2h;
    int v_clicks = n1v + n2v;
    if (h_clicks != 1 || v_clicks != 1) {
        return "fail";
    }
    bool same_rail = (n1h == 1 && n1v == 1) || (n2h == 1 && n2v == 1);
    return same_rail ? std::string("psi+") : std::string("psi-");
}

}  // namespace detail

// Bell measurement of two dual-rail qubits. All four rail modes are consumed.
//
// Ideal mode projects onto the four Bell states directly (one record each).
// LinearOptical mode simulates the passive analyzer: a 50:50 beam splitter
// between the H modes and another between the V modes, followed by photon
// counting on all four outputs. That scheme resolves psi+ and psi- but maps
// both phi states onto the same bunched click patterns, so those merge into
// "fail" records (total probability 1/2 on Bell-state inputs). One record is
// returned per click pattern; callers aggregate by label.
inline std::vector<MeasurementRecord> bell_measure(const StateVector& sv, const Rail& rail1,
                                                   const Rail& rail2, BellAnalyzer mode) {
    detail::check_rail_photon(sv, rail1, "bell_measure");
    detail::check_rail_photon(sv, rail2, "bell_measure");
    std::vector<int> modes{rail1.h, rail1.v, rail2.h, rail2.v};
    std::vector<int> sorted_modes = modes;
    std::sort(sorted_modes.begin(), sorted_modes.end());
    if (std::adjacent_find(sorted_modes.begin(), sorted_modes.end()) != sorted_modes.end()) {
        throw std::invalid_argument("bell_measure: rails overlap");
    }

    std::vector<MeasurementRecord> out;
    if (mode == BellAnalyzer::Ideal) {
        for (BellKind kind : {BellKind::PhiPlus, BellKind::PhiMinus, BellKind::PsiPlus,
                              BellKind::PsiMinus}) {
            StateVector bell = bell_state(sv.mode_count(), sv.cutoff(), rail1, rail2, kind);
            // <B (x) rest | sv> for every configuration of the other modes.
            AmplitudeMap residual;
            for (const auto& [fs, amp] : sv.amplitudes()) {
                for (const auto& [bf, bamp] : bell.amplitudes()) {
                    bool match = true;
                    for (int m : modes) {
                        if (fs.occ[static_cast<std::size_t>(m)] !=
                            bf.occ[static_cast<std::size_t>(m)]) {
                            match = false;
                            break;
                        }
                    }
                    if (match) {
                        residual[detail::drop_modes(fs, sorted_modes)] +=
                            std::conj(bamp) * amp;
                    }
                }
            }
            double p = 0.0;
            for (const auto& [fs, amp] : residual) {
                p += std::norm(amp);
            }
            MeasurementRecord rec{bell_label(kind), p, std::nullopt};
            if (p > 0.0 && sv.mode_count() > 4) {
                StateVector post(sv.mode_count() - 4, sv.cutoff());
                post.add_truncation_loss(sv.truncation_loss());
                double scale = 1.0 / std::sqrt(p);
                for (const auto& [fs, amp] : residual) {
                    post.accumulate(fs, amp * scale);
                }
                rec.post_state = std::move(post);
            }
            out.push_back(std::move(rec));
        }
        return out;
    }

    StateVector mixed = apply_beam_splitter(sv, rail1.h, rail2.h, std::numbers::pi / 4.0);
    mixed = apply_beam_splitter(mixed, rail1.v, rail2.v, std::numbers::pi / 4.0);

    // Group by the click pattern on the four analyzer outputs.
    std::set<FockState, CanonicalOrder> patterns;
    for (const auto& [fs, amp] : mixed.amplitudes()) {
        patterns.insert(
            FockState(std::vector<int>{fs.occ[static_cast<std::size_t>(rail1.h)],
                                       fs.occ[static_cast<std::size_t>(rail1.v)],
                                       fs.occ[static_cast<std::size_t>(rail2.h)],
                                       fs.occ[static_cast<std::size_t>(rail2.v)]}));
    }
    for (const FockState& pattern : patterns) {
        MeasurementRecord rec = detect_pattern(mixed, modes, pattern.occ);
        rec.outcome = detail::classify_bell_pattern(pattern.occ[0], pattern.occ[1],
                                                    pattern.occ[2], pattern.occ[3]);
        out.push_back(std::move(rec));
    }
    return out;
}

// Samples a detector reading on one mode with quantum efficiency eta: the
// true photon number is drawn from the exact number distribution, then each
// photon is seen independently with probability eta (binomial thinning).
inline int lossy_detect(const StateVector& sv, int mode, double eta, SplitMix64& rng) {
    check_mode(sv, mode, "lossy_detect");
    if (!(eta >= 0.0 && eta <= 1.0)) {
        throw std::invalid_argument("lossy_detect: efficiency must lie in [0, 1]");
    }
    double norm = sv.squared_norm();
    if (norm <= 0.0) {
        throw std::invalid_argument("lossy_detect: empty state");
    }
    double u = rng.next_double() * norm;
    double acc = 0.0;
    int n = 0;
    for (const auto& [fs, amp] : sv.amplitudes()) {
        acc += std::norm(amp);
        n = fs.occ[static_cast<std::size_t>(mode)];
        if (u < acc) {
            break;
        }
    }
    return rng.next_binomial(n, eta);
}

}  // namespace photonic

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
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "photonic/elements.hpp"
#include "photonic/fock.hpp"

namespace photonic {

// A dual-rail polarization qubit: one photon shared between a horizontal
// mode and a vertical mode of the same spatial rail. Logical |0> is the
// photon in the H mode, logical |1> the photon in the V mode.
struct Rail {
    int h = 0;
    int v = 1;
};

// Maps qubit indices onto rails. The register does not own a state; it only
// records which physical modes carry which logical qubit.
class PolarizationRegister {
  public:
    explicit PolarizationRegister(std::vector<Rail> rails) : rails_(std::move(rails)) {
        std::vector<int> seen;
        for (const Rail& r : rails_) {
            if (r.h < 0 || r.v < 0 || r.h == r.v) {
                throw std::invalid_argument("PolarizationRegister: invalid rail");
            }
            seen.push_back(r.h);
            seen.push_back(r.v);
        }
        std::sort(seen.begin(), seen.end());
        if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
            throw std::invalid_argument("PolarizationRegister: rails share a mode");
        }
    }

    // Qubit q on modes (2q, 2q+1).
    static PolarizationRegister contiguous(int qubit_count) {
        if (qubit_count < 1) {
            throw std::invalid_argument("PolarizationRegister: need >= 1 qubit");
        }
        std::vector<Rail> rails;
        rails.reserve(static_cast<std::size_t>(qubit_count));
        for (int q = 0; q < qubit_count; ++q) {
            rails.push_back(Rail{2 * q, 2 * q + 1});
        }
        return PolarizationRegister(std::move(rails));
    }

    int qubit_count() const { return static_cast<int>(rails_.size()); }

    const Rail& rail(int qubit) const {
        if (qubit < 0 || qubit >= qubit_count()) {
            throw std::invalid_argument("PolarizationRegister: qubit out of range");
        }
        return rails_[static_cast<std::size_t>(qubit)];
    }

    // Smallest mode count that contains every referenced mode.
    int mode_count() const {
        int m = 0;
        for (const Rail& r : rails_) {
            m = std::max(m, std::max(r.h, r.v) + 1);
        }
        return m;
    }

  private:
    std::vector<Rail> rails_;
};

// Jones amplitudes (h, v) of a single polarized photon.
struct JonesVector {
    complexd h;
    complexd v;
};

inline JonesVector jones_h() { return {1.0, 0.0}; }
inline JonesVector jones_v() { return {0.0, 1.0}; }

// |L> = (|H> + i|V>)/sqrt2, |R> = (|H> - i|V>)/sqrt2.
inline JonesVector jones_left() {
    double s = 1.0 / std::sqrt(2.0);
    return {s, complexd(0.0, s)};
}
inline JonesVector jones_right() {
    double s = 1.0 / std::sqrt(2.0);
    return {s, complexd(0.0, -s)};
}

// |+-alpha> = (|H> +- e^{i alpha}|V>)/sqrt2. alpha = 0 gives the diagonal
// basis.
inline JonesVector jones_plus(double alpha) {
    double s = 1.0 / std::sqrt(2.0);
    return {s, s * std::exp(complexd(0.0, alpha))};
}
inline JonesVector jones_minus(double alpha) {
    double s = 1.0 / std::sqrt(2.0);
    return {s, -s * std::exp(complexd(0.0, alpha))};
}

// Single photon on `rail` with the given Jones amplitudes and vacuum in all
// other modes. The amplitudes are normalized here, so (1, 1) and the exact
// diagonal vector produce the same state.
inline StateVector polarized_photon(int mode_count, int cutoff, const Rail& rail,
                                    const JonesVector& jv) {
    double norm = std::sqrt(std::norm(jv.h) + std::norm(jv.v));
    if (norm < 1e-12) {
        throw std::invalid_argument("polarized_photon: zero Jones vector");
    }
    std::vector<int> occ(static_cast<std::size_t>(mode_count), 0);
    AmplitudeMap amps;
    if (std::abs(jv.h) > 0.0) {
        occ[static_cast<std::size_t>(rail.h)] = 1;
        amps[FockState(occ)] = jv.h / norm;
        occ[static_cast<std::size_t>(rail.h)] = 0;
    }
    if (std::abs(jv.v) > 0.0) {
        occ[static_cast<std::size_t>(rail.v)] = 1;
        amps[FockState(occ)] = jv.v / norm;
    }
    return StateVector::from_amplitudes(mode_count, cutoff, amps);
}

// Product of single-photon qubit states over a full register.
inline StateVector product_state(int mode_count, int cutoff, const PolarizationRegister& reg,
                                 const std::vector<JonesVector>& qubits) {
    if (static_cast<int>(qubits.size()) != reg.qubit_count()) {
        throw std::invalid_argument("product_state: one Jones vector per qubit required");
    }
    if (mode_count < reg.mode_count()) {
        throw std::invalid_argument("product_state: register does not fit in mode count");
    }
    StateVector out = polarized_photon(mode_count, cutoff, reg.rail(0), qubits[0]);
    for (int q = 1; q < reg.qubit_count(); ++q) {
        StateVector next = polarized_photon(mode_count, cutoff, reg.rail(q),
                                            qubits[static_cast<std::size_t>(q)]);
        AmplitudeMap amps;
        for (const auto& [fa, aa] : out.amplitudes()) {
            for (const auto& [fb, ab] : next.amplitudes()) {
                FockState merged = fa;
                for (int m = 0; m < mode_count; ++m) {
                    merged.occ[static_cast<std::size_t>(m)] +=
                        fb.occ[static_cast<std::size_t>(m)];
                }
                amps[merged] = aa * ab;
            }
        }
        out = StateVector::from_amplitudes(mode_count, cutoff, std::move(amps));
    }
    return out;
}

enum class BellKind { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

inline std::string bell_label(BellKind k) {
    switch (k) {
        case BellKind::PhiPlus: return "phi+";
        case BellKind::PhiMinus: return "phi-";
        case BellKind::PsiPlus: return "psi+";
        case BellKind::PsiMinus: return "psi-";
    }
    throw std::invalid_argument("bell_label: unknown kind");
}

// Maximally entangled pair on two rails:
//   phi+- = (|H,H> +- |V,V>)/sqrt2, psi+- = (|H,V> +- |V,H>)/sqrt2.
inline StateVector bell_state(int mode_count, int cutoff, const Rail& a, const Rail& b,
                              BellKind kind) {
    auto basis = [&](int ma, int mb) {
        std::vector<int> occ(static_cast<std::size_t>(mode_count), 0);
        occ[static_cast<std::size_t>(ma)] = 1;
        occ[static_cast<std::size_t>(mb)] = 1;
        return FockState(occ);
    };
    double s = 1.0 / std::sqrt(2.0);
    AmplitudeMap amps;
    switch (kind) {
        case BellKind::PhiPlus:
            amps[basis(a.h, b.h)] = s;
            amps[basis(a.v, b.v)] = s;
            break;
        case BellKind::PhiMinus:
            amps[basis(a.h, b.h)] = s;
            amps[basis(a.v, b.v)] = -s;
            break;
        case BellKind::PsiPlus:
            amps[basis(a.h, b.v)] = s;
            amps[basis(a.v, b.h)] = s;
            break;
        case BellKind::PsiMinus:
            amps[basis(a.h, b.v)] = s;
            amps[basis(a.v, b.h)] = -s;
            break;
    }
    return StateVector::from_amplitudes(mode_count, cutoff, amps);
}

inline Eigen::Matrix2cd pauli_x_matrix() {
    Eigen::Matrix2cd m;
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}

inline Eigen::Matrix2cd pauli_y_matrix() {
    Eigen::Matrix2cd m;
    m << 0.0, complexd(0.0, -1.0), complexd(0.0, 1.0), 0.0;
    return m;
}

inline Eigen::Matrix2cd pauli_z_matrix() {
    Eigen::Matrix2cd m;
    m << 1.0, 0.0, 0.0, -1.0;
    return m;
}

// Pauli gates as mode maps on the rail pair. The matrix entries are exact
// integers (or +-i), so these lifts introduce no rounding at all.
inline StateVector apply_pauli_x(const StateVector& sv, const Rail& r) {
    return apply_two_mode(sv, r.h, r.v, pauli_x_matrix());
}
inline StateVector apply_pauli_y(const StateVector& sv, const Rail& r) {
    return apply_two_mode(sv, r.h, r.v, pauli_y_matrix());
}
inline StateVector apply_pauli_z(const StateVector& sv, const Rail& r) {
    return apply_two_mode(sv, r.h, r.v, pauli_z_matrix());
}

// True when every supported basis state carries exactly one photon across
// the rail pair. Polarization encoding is meaningless otherwise.
inline bool rail_holds_one_photon(const StateVector& sv, const Rail& r) {
    for (const auto& [fs, amp] : sv.amplitudes()) {
        int n = fs.occ[static_cast<std::size_t>(r.h)] + fs.occ[static_cast<std::size_t>(r.v)];
        if (n != 1) {
            return false;
        }
    }
    return !sv.amplitudes().empty();
}

// Overlap |<target|sv>|^2 with the pure state `jv` on `rail` and vacuum in
// every other mode.
inline double qubit_fidelity(const StateVector& sv, const Rail& rail, const JonesVector& jv) {
    StateVector target = polarized_photon(sv.mode_count(), sv.cutoff(), rail, jv);
    return std::norm(inner_product(target, sv));
}

}  // namespace photonic

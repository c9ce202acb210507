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
#include <numbers>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "photonic/fock.hpp"
#include "photonic/unitary.hpp"

namespace photonic {

// Linear-optical circuit elements and their exact Fock-space action.
//
// Beam splitter convention (fixed across the whole library):
//   a_1 -> cos(theta) b_1 + sin(theta) b_2
//   a_2 -> sin(theta) b_1 - cos(theta) b_2
// theta = pi/4 is the 50:50 splitter; the relative minus sign carries the
// pi phase acquired on reflection.
//
// Wave plates act on the (horizontal, vertical) mode pair of one spatial
// rail. The polarizing beam splitter transmits horizontal modes and swaps
// the vertical modes of its two rails.

struct BeamSplitter {
    int mode_a = 0;
    int mode_b = 1;
    double theta = 0.0;
};

struct PhaseShifter {
    int mode = 0;
    double phi = 0.0;
};

struct HalfWavePlate {
    int mode_h = 0;
    int mode_v = 1;
    double axis = 0.0;  // fast-axis angle from horizontal, radians
};

struct QuarterWavePlate {
    int mode_h = 0;
    int mode_v = 1;
    double axis = 0.0;
};

struct PolarizingBeamSplitter {
    int a_h = 0;
    int a_v = 1;
    int b_h = 2;
    int b_v = 3;
};

using Element = std::variant<BeamSplitter, PhaseShifter, HalfWavePlate, QuarterWavePlate,
                             PolarizingBeamSplitter>;

inline Eigen::Matrix2cd beam_splitter_matrix(double theta) {
    double c = std::cos(theta), s = std::sin(theta);
    Eigen::Matrix2cd m;
    m << c, s, s, -c;
    return m;
}

inline Eigen::Matrix2cd half_wave_plate_matrix(double axis) {
    double c = std::cos(2.0 * axis), s = std::sin(2.0 * axis);
    Eigen::Matrix2cd m;
    m << c, s, s, -c;
    return m;
}

// Fast axis at `axis`; the convention is fixed so that a quarter-wave plate
// at 45 degrees turns |H> into (|H> + i|V>)/sqrt(2) exactly.
inline Eigen::Matrix2cd quarter_wave_plate_matrix(double axis) {
    complexd i(0.0, 1.0);
    complexd pre = std::exp(i * (std::numbers::pi / 4.0));
    double c = std::cos(axis), s = std::sin(axis);
    Eigen::Matrix2cd m;
    m << c * c - i * s * s, (1.0 + i) * s * c, (1.0 + i) * s * c, s * s - i * c * c;
    return pre * m;
}

inline std::vector<int> element_modes(const Element& el) {
    return std::visit(
        [](const auto& e) -> std::vector<int> {
            using T = std::decay_t<decltype(e)>;
            if constexpr (std::is_same_v<T, BeamSplitter>) {
                return {e.mode_a, e.mode_b};
            } else if constexpr (std::is_same_v<T, PhaseShifter>) {
                return {e.mode};
            } else if constexpr (std::is_same_v<T, HalfWavePlate> ||
                                 std::is_same_v<T, QuarterWavePlate>) {
                return {e.mode_h, e.mode_v};
            } else {
                return {e.a_h, e.a_v, e.b_h, e.b_v};
            }
        },
        el);
}

inline std::string element_kind(const Element& el) {
    return std::visit(
        [](const auto& e) -> std::string {
            using T = std::decay_t<decltype(e)>;
            if constexpr (std::is_same_v<T, BeamSplitter>) {
                return "beam_splitter";
            } else if constexpr (std::is_same_v<T, PhaseShifter>) {
                return "phase_shifter";
            } else if constexpr (std::is_same_v<T, HalfWavePlate>) {
                return "half_wave_plate";
            } else if constexpr (std::is_same_v<T, QuarterWavePlate>) {
                return "quarter_wave_plate";
            } else {
                return "polarizing_beam_splitter";
            }
        },
        el);
}

inline void validate_element(const Element& el, int mode_count) {
    std::vector<int> modes = element_modes(el);
    for (int m : modes) {
        if (m < 0 || m >= mode_count) {
            throw std::invalid_argument("Circuit: element mode index out of range");
        }
    }
    std::vector<int> sorted = modes;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw std::invalid_argument("Circuit: element modes must be distinct");
    }
}

class Circuit {
  public:
    explicit Circuit(int mode_count) : mode_count_(mode_count) {
        if (mode_count < 1) {
            throw std::invalid_argument("Circuit: mode_count must be >= 1");
        }
    }

    int mode_count() const { return mode_count_; }
    const std::vector<Element>& elements() const { return elements_; }

    Circuit& add(Element el) {
        validate_element(el, mode_count_);
        elements_.push_back(el);
        return *this;
    }

  private:
    int mode_count_;
    std::vector<Element> elements_;
};

inline double binomial(int n, int k) {
    if (k < 0 || k > n) {
        return 0.0;
    }
    return factorial(n) / (factorial(k) * factorial(n - k));
}

inline complexd ipow(complexd base, int exponent) {
    complexd out = 1.0;
    for (int k = 0; k < exponent; ++k) {
        out *= base;
    }
    return out;
}

// Exact Fock action of a 2x2 mode unitary on modes (i, j): the creation
// operators transform as a†_i -> u00 b†_i + u10 b†_j and
// a†_j -> u01 b†_i + u11 b†_j, and the multinomial expansion is summed
// per input component. Photon number is conserved, so the cutoff is never
// crossed.
inline StateVector apply_two_mode(const StateVector& sv, int i, int j,
                                  const Eigen::Matrix2cd& u) {
    check_mode(sv, i, "apply_two_mode");
    check_mode(sv, j, "apply_two_mode");
    if (i == j) {
        throw std::invalid_argument("apply_two_mode: modes must be distinct");
    }
    StateVector out(sv.mode_count(), sv.cutoff());
    out.add_truncation_loss(sv.truncation_loss());
    for (const auto& [fs, amp] : sv.amplitudes()) {
        int p = fs.occ[static_cast<std::size_t>(i)];
        int q = fs.occ[static_cast<std::size_t>(j)];
        if (p + q == 0) {
            out.accumulate(fs, amp);
            continue;
        }
        double input_norm = std::sqrt(factorial(p) * factorial(q));
        for (int n1 = 0; n1 <= p + q; ++n1) {
            int n2 = p + q - n1;
            complexd coeff = 0.0;
            int r_lo = std::max(0, n1 - q);
            int r_hi = std::min(p, n1);
            for (int r = r_lo; r <= r_hi; ++r) {
                coeff += binomial(p, r) * binomial(q, n1 - r) * ipow(u(0, 0), r) *
                         ipow(u(1, 0), p - r) * ipow(u(0, 1), n1 - r) *
                         ipow(u(1, 1), q - n1 + r);
            }
            if (std::abs(coeff) == 0.0) {
                continue;
            }
            coeff *= std::sqrt(factorial(n1) * factorial(n2)) / input_norm;
            FockState target = fs;
            target.occ[static_cast<std::size_t>(i)] = n1;
            target.occ[static_cast<std::size_t>(j)] = n2;
            out.accumulate(target, amp * coeff);
        }
    }
    out.prune();
    return out;
}

inline StateVector apply_beam_splitter(const StateVector& sv, int mode_a, int mode_b,
                                       double theta) {
    return apply_two_mode(sv, mode_a, mode_b, beam_splitter_matrix(theta));
}

inline StateVector apply_phase_shifter(const StateVector& sv, int mode, double phi) {
    check_mode(sv, mode, "apply_phase_shifter");
    StateVector out(sv.mode_count(), sv.cutoff());
    out.add_truncation_loss(sv.truncation_loss());
    complexd i(0.0, 1.0);
    for (const auto& [fs, amp] : sv.amplitudes()) {
        int n = fs.occ[static_cast<std::size_t>(mode)];
        out.accumulate(fs, amp * std::exp(i * (phi * n)));
    }
    return out;
}

inline StateVector apply_half_wave_plate(const StateVector& sv, int mode_h, int mode_v,
                                         double axis) {
    return apply_two_mode(sv, mode_h, mode_v, half_wave_plate_matrix(axis));
}

inline StateVector apply_quarter_wave_plate(const StateVector& sv, int mode_h, int mode_v,
                                            double axis) {
    return apply_two_mode(sv, mode_h, mode_v, quarter_wave_plate_matrix(axis));
}

// Horizontal modes pass; vertical modes swap rails. A pure relabeling of
// occupation vectors (bosonic modes commute, so no sign appears).
inline StateVector apply_polarizing_beam_splitter(const StateVector& sv,
                                                  const PolarizingBeamSplitter& pbs) {
    validate_element(pbs, sv.mode_count());
    StateVector out(sv.mode_count(), sv.cutoff());
    out.add_truncation_loss(sv.truncation_loss());
    for (const auto& [fs, amp] : sv.amplitudes()) {
        FockState target = fs;
        std::swap(target.occ[static_cast<std::size_t>(pbs.a_v)],
                  target.occ[static_cast<std::size_t>(pbs.b_v)]);
        out.accumulate(target, amp);
    }
    return out;
}

inline StateVector apply_element(const StateVector& sv, const Element& el) {
    return std::visit(
        [&](const auto& e) -> StateVector {
            using T = std::decay_t<decltype(e)>;
            if constexpr (std::is_same_v<T, BeamSplitter>) {
                return apply_beam_splitter(sv, e.mode_a, e.mode_b, e.theta);
            } else if constexpr (std::is_same_v<T, PhaseShifter>) {
                return apply_phase_shifter(sv, e.mode, e.phi);
            } else if constexpr (std::is_same_v<T, HalfWavePlate>) {
                return apply_half_wave_plate(sv, e.mode_h, e.mode_v, e.axis);
            } else if constexpr (std::is_same_v<T, QuarterWavePlate>) {
                return apply_quarter_wave_plate(sv, e.mode_h, e.mode_v, e.axis);
            } else {
                return apply_polarizing_beam_splitter(sv, e);
            }
        },
        el);
}

inline StateVector apply_circuit(const StateVector& sv, const Circuit& circuit) {
    if (sv.mode_count() != circuit.mode_count()) {
        throw std::invalid_argument("apply_circuit: mode count mismatch");
    }
    StateVector out = sv;
    for (const Element& el : circuit.elements()) {
        out = apply_element(out, el);
    }
    return out;
}

inline ModeUnitary element_unitary(const Element& el, int mode_count) {
    validate_element(el, mode_count);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(mode_count, mode_count);
    std::visit(
        [&](const auto& e) {
            using T = std::decay_t<decltype(e)>;
            if constexpr (std::is_same_v<T, BeamSplitter>) {
                Eigen::Matrix2cd b = beam_splitter_matrix(e.theta);
                m(e.mode_a, e.mode_a) = b(0, 0);
                m(e.mode_a, e.mode_b) = b(0, 1);
                m(e.mode_b, e.mode_a) = b(1, 0);
                m(e.mode_b, e.mode_b) = b(1, 1);
            } else if constexpr (std::is_same_v<T, PhaseShifter>) {
                m(e.mode, e.mode) = std::exp(complexd(0.0, e.phi));
            } else if constexpr (std::is_same_v<T, HalfWavePlate> ||
                                 std::is_same_v<T, QuarterWavePlate>) {
                Eigen::Matrix2cd b;
                if constexpr (std::is_same_v<T, HalfWavePlate>) {
                    b = half_wave_plate_matrix(e.axis);
                } else {
                    b = quarter_wave_plate_matrix(e.axis);
                }
                m(e.mode_h, e.mode_h) = b(0, 0);
                m(e.mode_h, e.mode_v) = b(0, 1);
                m(e.mode_v, e.mode_h) = b(1, 0);
                m(e.mode_v, e.mode_v) = b(1, 1);
            } else {
                m(e.a_v, e.a_v) = 0.0;
                m(e.b_v, e.b_v) = 0.0;
                m(e.a_v, e.b_v) = 1.0;
                m(e.b_v, e.a_v) = 1.0;
            }
        },
        el);
    return ModeUnitary(m);
}

// Composite mode map of the whole circuit: applying elements e_1 .. e_n in
// order realizes U = E_n * ... * E_1.
inline ModeUnitary circuit_to_unitary(const Circuit& circuit) {
    Eigen::MatrixXcd total =
        Eigen::MatrixXcd::Identity(circuit.mode_count(), circuit.mode_count());
    for (const Element& el : circuit.elements()) {
        total = element_unitary(el, circuit.mode_count()).matrix() * total;
    }
    return ModeUnitary(total);
}

namespace detail {

inline constexpr double kPhaseEpsilon = 1e-12;

// Append elements realizing the 2x2 unitary v on modes (p, q):
// v = diag(e^{i a1}, e^{i a2}) * BS(theta) * diag(e^{i b1}, e^{i b2}).
inline void emit_two_mode_unitary(Circuit& c, int p, int q, const Eigen::Matrix2cd& v) {
    double mag01 = std::abs(v(0, 1));
    double mag00 = std::abs(v(0, 0));
    if (mag01 < kPhaseEpsilon) {
        // Diagonal up to tolerance.
        double phi_p = std::arg(v(0, 0));
        double phi_q = std::arg(v(1, 1));
        if (std::abs(phi_p) > kPhaseEpsilon) {
            c.add(PhaseShifter{p, phi_p});
        }
        if (std::abs(phi_q) > kPhaseEpsilon) {
            c.add(PhaseShifter{q, phi_q});
        }
        return;
    }
    if (mag00 < kPhaseEpsilon) {
        // Pure swap with phases: v = diag(v01, v10) * BS(pi/2).
        c.add(BeamSplitter{p, q, std::numbers::pi / 2.0});
        double phi_p = std::arg(v(0, 1));
        double phi_q = std::arg(v(1, 0));
        if (std::abs(phi_p) > kPhaseEpsilon) {
            c.add(PhaseShifter{p, phi_p});
        }
        if (std::abs(phi_q) > kPhaseEpsilon) {
            c.add(PhaseShifter{q, phi_q});
        }
        return;
    }
    double theta = std::atan2(mag01, mag00);
    double b1 = std::arg(v(0, 0));
    double b2 = std::arg(v(0, 1));
    double a2 = std::arg(v(1, 0)) - std::arg(v(0, 0));
    if (std::abs(b1) > kPhaseEpsilon) {
        c.add(PhaseShifter{p, b1});
    }
    if (std::abs(b2) > kPhaseEpsilon) {
        c.add(PhaseShifter{q, b2});
    }
    c.add(BeamSplitter{p, q, theta});
    if (std::abs(a2) > kPhaseEpsilon) {
        c.add(PhaseShifter{q, a2});
    }
}

}  // namespace detail

// Triangular (Reck-style) decomposition into beam splitters and phase
// shifters: sub-diagonal entries are eliminated column-major by Givens-type
// 2-mode rotations, leaving a diagonal phase layer. The returned circuit
// reproduces the input exactly (no global-phase ambiguity):
//   U = G_1† ... G_K† D, emitted as [D, G_K†, ..., G_1†].
inline Circuit reck_decompose(const ModeUnitary& u) {
    int m = u.dim();
    Eigen::MatrixXcd r = u.matrix();
    struct Rotation {
        int p, q;
        Eigen::Matrix2cd g;
    };
    std::vector<Rotation> rotations;
    for (int col = 0; col < m - 1; ++col) {
        for (int row = m - 1; row > col; --row) {
            complexd x = r(col, col);
            complexd y = r(row, col);
            if (std::abs(y) < detail::kPhaseEpsilon) {
                continue;
            }
            double nrm = std::sqrt(std::norm(x) + std::norm(y));
            Eigen::Matrix2cd g;
            g << std::conj(x) / nrm, std::conj(y) / nrm, -y / nrm, x / nrm;
            Eigen::RowVectorXcd top = r.row(col), bottom = r.row(row);
            r.row(col) = g(0, 0) * top + g(0, 1) * bottom;
            r.row(row) = g(1, 0) * top + g(1, 1) * bottom;
            rotations.push_back({col, row, g});
        }
    }
    Circuit c(m);
    for (int k = 0; k < m; ++k) {
        double phi = std::arg(r(k, k));
        if (std::abs(phi) > detail::kPhaseEpsilon) {
            c.add(PhaseShifter{k, phi});
        }
    }
    for (auto it = rotations.rbegin(); it != rotations.rend(); ++it) {
        detail::emit_two_mode_unitary(c, it->p, it->q, it->g.adjoint());
    }
    return c;
}

}  // namespace photonic

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
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "photonic/elements.hpp"
#include "photonic/fock.hpp"
#include "photonic/measurement.hpp"
#include "photonic/polarization.hpp"
#include "photonic/rng.hpp"

namespace photonic {

// Success branch of a post-selected gate.
struct HeraldedGateResult {
    bool success = false;
    double success_probability = 0.0;
    std::optional<StateVector> output_state;
};

// Angles of the three-splitter nonlinear-sign network and the heralded
// amplitude c they achieve (output is c (a0|0> + a1|1> - a2|2>) on the
// herald).
struct NsSolution {
    double theta1 = 0.0;
    double theta2 = 0.0;
    double theta3 = 0.0;
    double amplitude = 0.0;  // c; the gate succeeds with |c|^2
    double residual = 0.0;   // remaining norm of the herald constraints
};

namespace detail {

// Herald amplitudes of the NS network and their angle gradients.
//
// Modes: 0 = signal, 1 = ancilla holding one photon, 2 = empty ancilla.
// Network: BS(1,2, t1), BS(0,1, t2), BS(1,2, t3); herald = (1, 0) on the
// ancilla pair. With n signal photons the herald amplitude A_n is a
// polynomial in the entries of the composed 3x3 mode matrix (a matrix
// permanent with repeated rows/columns):
//   A0 = U11,  A1 = U00 U11 + U01 U10,  A2 = U00^2 U11 + 2 U00 U01 U10.
// All splitters are real, so everything here stays real.
struct NsAmplitudes {
    Eigen::Vector3d a;                    // (A0, A1, A2)
    std::array<Eigen::Vector3d, 3> grad;  // gradients wrt (t1, t2, t3)
};

inline NsAmplitudes ns_amplitudes(const Eigen::Vector3d& t) {
    auto bs = [](double th) {
        Eigen::Matrix2d m;
        m << std::cos(th), std::sin(th), std::sin(th), -std::cos(th);
        return m;
    };
    auto dbs = [](double th) {
        Eigen::Matrix2d m;
        m << -std::sin(th), std::cos(th), std::cos(th), std::sin(th);
        return m;
    };
    auto embed = [](const Eigen::Matrix2d& m, int i, int j, bool derivative) {
        Eigen::Matrix3d out = derivative ? Eigen::Matrix3d::Zero().eval()
                                         : Eigen::Matrix3d::Identity().eval();
        out(i, i) = m(0, 0);
        out(i, j) = m(0, 1);
        out(j, i) = m(1, 0);
        out(j, j) = m(1, 1);
        return out;
    };

    Eigen::Matrix3d e1 = embed(bs(t(0)), 1, 2, false);
    Eigen::Matrix3d e2 = embed(bs(t(1)), 0, 1, false);
    Eigen::Matrix3d e3 = embed(bs(t(2)), 1, 2, false);
    Eigen::Matrix3d u = e3 * e2 * e1;
    std::array<Eigen::Matrix3d, 3> du{e3 * e2 * embed(dbs(t(0)), 1, 2, true),
                                      e3 * embed(dbs(t(1)), 0, 1, true) * e1,
                                      embed(dbs(t(2)), 1, 2, true) * e2 * e1};

    NsAmplitudes out;
    out.a(0) = u(1, 1);
    out.a(1) = u(0, 0) * u(1, 1) + u(0, 1) * u(1, 0);
    out.a(2) = u(0, 0) * u(0, 0) * u(1, 1) + 2.0 * u(0, 0) * u(0, 1) * u(1, 0);
    for (int k = 0; k < 3; ++k) {
        const Eigen::Matrix3d& d = du[static_cast<std::size_t>(k)];
        out.grad[0](k) = d(1, 1);
        out.grad[1](k) = d(0, 0) * u(1, 1) + u(0, 0) * d(1, 1) + d(0, 1) * u(1, 0) +
                         u(0, 1) * d(1, 0);
        out.grad[2](k) = 2.0 * u(0, 0) * d(0, 0) * u(1, 1) +
                         u(0, 0) * u(0, 0) * d(1, 1) +
                         2.0 * (d(0, 0) * u(0, 1) * u(1, 0) +
                                u(0, 0) * d(0, 1) * u(1, 0) +
                                u(0, 0) * u(0, 1) * d(1, 0));
    }
    return out;
}

// Stationarity of |A0| on the constraint manifold {A0 = A1, A0 = -A2}: the
// three gradients become linearly dependent, i.e. this determinant vanishes.
inline double ns_stationarity(const Eigen::Vector3d& t) {
    NsAmplitudes amp = ns_amplitudes(t);
    Eigen::Matrix3d rows;
    rows.row(0) = (amp.grad[0] - amp.grad[1]).transpose();
    rows.row(1) = (amp.grad[0] + amp.grad[2]).transpose();
    rows.row(2) = amp.grad[0].transpose();
    return rows.determinant();
}

inline Eigen::Vector3d ns_system(const Eigen::Vector3d& t) {
    NsAmplitudes amp = ns_amplitudes(t);
    return Eigen::Vector3d(amp.a(0) - amp.a(1), amp.a(0) + amp.a(2), ns_stationarity(t));
}

}  // namespace detail

// Solves for the splitter angles of the nonlinear-sign network.
//
// The obvious approach (fix the middle angle, solve the two herald
// constraints, scan the middle angle for the best amplitude) breaks down:
// the optimum sits exactly on a fold of the constraint branch where the 2x2
// Jacobian in the outer angles is singular. Instead the full first-order
// system is solved at once: both herald constraints plus the vanishing of
// the 3x3 determinant that expresses stationarity of the amplitude on the
// constraint manifold. Multi-start damped Newton finds the roots; the best
// one is polished with a Gauss-Newton pass on the two constraints alone.
inline NsSolution solve_ns_coefficients() {
    SplitMix64 rng(0x4E5A11);
    const double kPi = std::numbers::pi;

    auto newton = [&](Eigen::Vector3d t) -> std::optional<Eigen::Vector3d> {
        for (int iter = 0; iter < 80; ++iter) {
            Eigen::Vector3d f = detail::ns_system(t);
            if (f.norm() < 1e-12) {
                return t;
            }
            detail::NsAmplitudes amp = detail::ns_amplitudes(t);
            Eigen::Matrix3d jac;
            jac.row(0) = (amp.grad[0] - amp.grad[1]).transpose();
            jac.row(1) = (amp.grad[0] + amp.grad[2]).transpose();
            const double h = 1e-6;
            for (int k = 0; k < 3; ++k) {
                Eigen::Vector3d tp = t;
                Eigen::Vector3d tm = t;
                tp(k) += h;
                tm(k) -= h;
                jac(2, k) =
                    (detail::ns_stationarity(tp) - detail::ns_stationarity(tm)) / (2.0 * h);
            }
            Eigen::FullPivLU<Eigen::Matrix3d> lu(jac);
            if (!lu.isInvertible()) {
                return std::nullopt;
            }
            Eigen::Vector3d step = lu.solve(-f);
            double scale = 1.0;
            while (scale > 1e-4 && detail::ns_system(t + scale * step).norm() > f.norm()) {
                scale *= 0.5;
            }
            t += scale * step;
        }
        return detail::ns_system(t).norm() < 1e-10 ? std::optional<Eigen::Vector3d>(t)
                                                   : std::nullopt;
    };

    std::optional<Eigen::Vector3d> best;
    double best_amp2 = 0.0;
    for (int start = 0; start < 200; ++start) {
        Eigen::Vector3d t0(kPi * (rng.next_double() - 0.5),
                           kPi * (rng.next_double() - 0.5),
                           kPi * (rng.next_double() - 0.5));
        auto root = newton(t0);
        if (!root) {
            continue;
        }
        double amp2 = std::pow(detail::ns_amplitudes(*root).a(0), 2.0);
        if (amp2 > best_amp2 + 1e-12) {
            best_amp2 = amp2;
            best = root;
        }
    }
    if (!best) {
        throw std::runtime_error("solve_ns_coefficients: no root converged");
    }

    // Gauss-Newton polish of the two herald constraints (minimal-norm step).
    Eigen::Vector3d t = *best;
    for (int iter = 0; iter < 20; ++iter) {
        detail::NsAmplitudes amp = detail::ns_amplitudes(t);
        Eigen::Vector2d f(amp.a(0) - amp.a(1), amp.a(0) + amp.a(2));
        if (f.norm() < 1e-15) {
            break;
        }
        Eigen::Matrix<double, 2, 3> jac;
        jac.row(0) = (amp.grad[0] - amp.grad[1]).transpose();
        jac.row(1) = (amp.grad[0] + amp.grad[2]).transpose();
        Eigen::Matrix2d gram = jac * jac.transpose();
        Eigen::FullPivLU<Eigen::Matrix2d> lu(gram);
        if (!lu.isInvertible()) {
            break;
        }
        t += jac.transpose() * lu.solve(-f);
    }

    detail::NsAmplitudes amp = detail::ns_amplitudes(t);
    NsSolution sol;
    sol.theta1 = t(0);
    sol.theta2 = t(1);
    sol.theta3 = t(2);
    sol.amplitude = amp.a(0);
    sol.residual = Eigen::Vector2d(amp.a(0) - amp.a(1), amp.a(0) + amp.a(2)).norm();
    if (std::abs(sol.amplitude * sol.amplitude - 0.25) > 1e-9 || sol.residual > 1e-10) {
        throw std::runtime_error(
            "solve_ns_coefficients: converged off the optimum, residual " +
            std::to_string(sol.residual) + ", |c|^2 " +
            std::to_string(sol.amplitude * sol.amplitude));
    }
    return sol;
}

// The solve is deterministic, so run it once per process.
inline const NsSolution& ns_angles() {
    static const NsSolution cached = solve_ns_coefficients();
    return cached;
}

namespace detail {

// NS network as circuit elements acting on (signal, ancilla1, ancilla2).
inline void append_ns_network(Circuit& c, int signal, int anc1, int anc2) {
    const NsSolution& sol = ns_angles();
    c.add(BeamSplitter{anc1, anc2, sol.theta1});
    c.add(BeamSplitter{signal, anc1, sol.theta2});
    c.add(BeamSplitter{anc1, anc2, sol.theta3});
}

}  // namespace detail

// Heralded nonlinear sign flip on a single-mode state with support on
// {|0>, |1>, |2>}: conditioned on the ancilla herald, a0|0> + a1|1> + a2|2>
// becomes a0|0> + a1|1> - a2|2>, with success probability 1/4 regardless of
// the input. The returned state has the herald's amplitude divided out, so
// it is exactly the sign-flipped input.
inline HeraldedGateResult ns_gate(const StateVector& input) {
    if (input.mode_count() != 1) {
        throw std::invalid_argument("ns_gate: input must be a single mode");
    }
    for (const auto& [fs, amp] : input.amplitudes()) {
        if (fs.occ[0] > 2) {
            throw std::invalid_argument("ns_gate: support beyond two photons");
        }
    }

    StateVector ancilla = StateVector::basis_state(1, FockState({1, 0}));
    StateVector sv = tensor(input, ancilla);
    Circuit c(3);
    detail::append_ns_network(c, 0, 1, 2);
    sv = apply_circuit(sv, c);

    MeasurementRecord herald = detect_pattern(sv, {1, 2}, {1, 0});
    HeraldedGateResult result;
    result.success = herald.probability > 0.0;
    result.success_probability = herald.probability;
    if (herald.post_state.has_value()) {
        // The herald amplitude is c times the target; renormalization leaves
        // sign(c), which is divided out here to pin the global phase.
        double sign = (ns_angles().amplitude < 0.0) ? -1.0 : 1.0;
        result.output_state = herald.post_state->scaled(sign);
    }
    return result;
}

// Diagonal controlled-Z on two dual-rail qubits: -1 whenever both V modes
// are occupied. This is the ideal gate used for cluster construction.
inline StateVector apply_cz_ideal(const StateVector& sv, const Rail& q1, const Rail& q2) {
    check_mode(sv, q1.v, "apply_cz_ideal");
    check_mode(sv, q2.v, "apply_cz_ideal");
    StateVector out(sv.mode_count(), sv.cutoff());
    out.add_truncation_loss(sv.truncation_loss());
    for (const auto& [fs, amp] : sv.amplitudes()) {
        int n1 = fs.occ[static_cast<std::size_t>(q1.v)];
        int n2 = fs.occ[static_cast<std::size_t>(q2.v)];
        double sign = (n1 * n2) % 2 == 0 ? 1.0 : -1.0;
        out.accumulate(fs, amp * sign);
    }
    return out;
}

// Post-selected controlled-Z: the V rails interfere on a 50:50 splitter,
// pass one NS network each, and recombine (the splitter is an involution,
// so the same element undoes itself). Both heralds firing projects onto the
// success branch with probability 1/16; the double herald contributes c^2 =
// +1/4, so the renormalized output carries no parasitic phase.
inline HeraldedGateResult cz_gate(const StateVector& input, const Rail& q1, const Rail& q2) {
    detail::check_rail_photon(input, q1, "cz_gate");
    detail::check_rail_photon(input, q2, "cz_gate");
    int m = input.mode_count();

    StateVector ancillas = StateVector::basis_state(2, FockState({1, 0, 1, 0}));
    StateVector sv = tensor(input, ancillas);

    Circuit c(m + 4);
    c.add(BeamSplitter{q1.v, q2.v, std::numbers::pi / 4.0});
    detail::append_ns_network(c, q1.v, m, m + 1);
    detail::append_ns_network(c, q2.v, m + 2, m + 3);
    c.add(BeamSplitter{q1.v, q2.v, std::numbers::pi / 4.0});
    sv = apply_circuit(sv, c);

    MeasurementRecord herald = detect_pattern(sv, {m, m + 1, m + 2, m + 3}, {1, 0, 1, 0});
    HeraldedGateResult result;
    result.success = herald.probability > 0.0;
    result.success_probability = herald.probability;
    result.output_state = herald.post_state;
    return result;
}

enum class Type1Outcome { Plus, Minus, Fail };

// Type-I fusion of two dual-rail qubits: the pair is projected through
// F_± = (|H><HH| ± |V><VV|)/sqrt2, leaving one photon on `keep` and
// removing the `drop` rail. The normalization makes {F_+, F_-, fail
// projector} a complete measurement, so branch probabilities sum to one.
// The fail branch keeps both photons and projects onto the mixed
// (H,V)/(V,H) span.
inline MeasurementRecord fusion_type1(const StateVector& sv, const Rail& keep,
                                      const Rail& drop, Type1Outcome outcome) {
    detail::check_rail_photon(sv, keep, "fusion_type1");
    detail::check_rail_photon(sv, drop, "fusion_type1");

    std::vector<int> drop_sorted{drop.h, drop.v};
    std::sort(drop_sorted.begin(), drop_sorted.end());

    auto qubit_of = [](const FockState& fs, const Rail& r) {
        return fs.occ[static_cast<std::size_t>(r.v)] == 1;  // false = H, true = V
    };

    AmplitudeMap residual;
    double p = 0.0;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (const auto& [fs, amp] : sv.amplitudes()) {
        bool keep_v = qubit_of(fs, keep);
        bool drop_v = qubit_of(fs, drop);
        if (outcome == Type1Outcome::Fail) {
            if (keep_v != drop_v) {
                p += std::norm(amp);
                residual[fs] += amp;
            }
            continue;
        }
        if (keep_v != drop_v) {
            continue;
        }
        complexd coeff = inv_sqrt2;
        if (keep_v && outcome == Type1Outcome::Minus) {
            coeff = -inv_sqrt2;
        }
        p += std::norm(coeff * amp);
        residual[detail::drop_modes(fs, drop_sorted)] += coeff * amp;
    }

    const char* label = outcome == Type1Outcome::Plus    ? "+"
                        : outcome == Type1Outcome::Minus ? "-"
                                                         : "fail";
    MeasurementRecord rec{label, p, std::nullopt};
    if (p <= 0.0) {
        return rec;
    }
    int remaining = outcome == Type1Outcome::Fail ? sv.mode_count() : sv.mode_count() - 2;
    StateVector post(remaining, sv.cutoff());
    post.add_truncation_loss(sv.truncation_loss());
    double scale = 1.0 / std::sqrt(p);
    for (const auto& [fs, amp] : residual) {
        post.accumulate(fs, amp * scale);
    }
    rec.post_state = std::move(post);
    return rec;
}

// Interferometer-level realization of type-I fusion, used to cross-check
// the operator form: a polarizing beam splitter between the rails, a half
// wave plate at 22.5 degrees on the detected rail, then photon counting
// there. One H click is the + outcome, one V click the - outcome; zero or
// two photons mean failure.
inline MeasurementRecord fusion_type1_optical(const StateVector& sv, const Rail& keep,
                                              const Rail& drop, Type1Outcome outcome) {
    detail::check_rail_photon(sv, keep, "fusion_type1_optical");
    detail::check_rail_photon(sv, drop, "fusion_type1_optical");
    if (outcome == Type1Outcome::Fail) {
        throw std::invalid_argument(
            "fusion_type1_optical: fail branch is a set of click patterns, not one record");
    }
    StateVector mixed =
        apply_polarizing_beam_splitter(sv, PolarizingBeamSplitter{keep.h, keep.v, drop.h,
                                                                  drop.v});
    mixed = apply_half_wave_plate(mixed, drop.h, drop.v, std::numbers::pi / 8.0);
    std::vector<int> counts = outcome == Type1Outcome::Plus ? std::vector<int>{1, 0}
                                                            : std::vector<int>{0, 1};
    MeasurementRecord rec = detect_pattern(mixed, {drop.h, drop.v}, counts);
    rec.outcome = outcome == Type1Outcome::Plus ? "+" : "-";
    return rec;
}

enum class Type2Outcome { SamePolarization, CrossPolarization, FailPsiMinus, FailPhiMinus };

// Type-II fusion: both photons are consumed. Matching detector clicks
// (H,H)/(V,V) apply (<HV| + <VH|)/sqrt2; opposite clicks (H,V)/(V,H) apply
// (<HH| + <VV|)/sqrt2. The two fail branches are the orthogonal complements
// (the psi- and phi- projections), completing the measurement.
inline MeasurementRecord fusion_type2(const StateVector& sv, const Rail& first,
                                      const Rail& second, Type2Outcome outcome) {
    detail::check_rail_photon(sv, first, "fusion_type2");
    detail::check_rail_photon(sv, second, "fusion_type2");

    std::vector<int> all_modes{first.h, first.v, second.h, second.v};
    std::sort(all_modes.begin(), all_modes.end());
    if (std::adjacent_find(all_modes.begin(), all_modes.end()) != all_modes.end()) {
        throw std::invalid_argument("fusion_type2: rails overlap");
    }

    // Bra coefficients on (first, second) in the order HH, HV, VH, VV.
    const double s = 1.0 / std::sqrt(2.0);
    std::array<double, 4> bra{};
    const char* label = "";
    switch (outcome) {
        case Type2Outcome::SamePolarization:
            bra = {0.0, s, s, 0.0};
            label = "same-polarization";
            break;
        case Type2Outcome::CrossPolarization:
            bra = {s, 0.0, 0.0, s};
            label = "cross-polarization";
            break;
        case Type2Outcome::FailPsiMinus:
            bra = {0.0, s, -s, 0.0};
            label = "fail-psi-minus";
            break;
        case Type2Outcome::FailPhiMinus:
            bra = {s, 0.0, 0.0, -s};
            label = "fail-phi-minus";
            break;
    }

    AmplitudeMap residual;
    double p = 0.0;
    for (const auto& [fs, amp] : sv.amplitudes()) {
        bool first_v = fs.occ[static_cast<std::size_t>(first.v)] == 1;
        bool second_v = fs.occ[static_cast<std::size_t>(second.v)] == 1;
        int idx = (first_v ? 2 : 0) + (second_v ? 1 : 0);
        double coeff = bra[static_cast<std::size_t>(idx)];
        if (coeff == 0.0) {
            continue;
        }
        residual[detail::drop_modes(fs, all_modes)] += coeff * amp;
    }
    for (const auto& [fs, amp] : residual) {
        p += std::norm(amp);
    }

    MeasurementRecord rec{label, p, std::nullopt};
    if (p <= 0.0 || sv.mode_count() <= 4) {
        return rec;
    }
    StateVector post(sv.mode_count() - 4, sv.cutoff());
    post.add_truncation_loss(sv.truncation_loss());
    double scale = 1.0 / std::sqrt(p);
    for (const auto& [fs, amp] : residual) {
        post.accumulate(fs, amp * scale);
    }
    rec.post_state = std::move(post);
    return rec;
}

// Graph state over dual-rail qubits on contiguous rails.
struct GraphState {
    int vertices = 0;
    std::vector<std::pair<int, int>> edges;
    StateVector realized = StateVector::vacuum(1, 0);
};

// Builds Prod_edges CZ |+>^n with ideal gates. Duplicate edges collapse to
// one (CZ is an involution, so a doubled edge would silently cancel).
inline GraphState build_cluster(int vertices, const std::vector<std::pair<int, int>>& edges) {
    if (vertices < 1 || vertices > 8) {
        throw std::invalid_argument("build_cluster: vertex count must lie in [1, 8]");
    }
    std::set<std::pair<int, int>> unique_edges;
    for (const auto& [a, b] : edges) {
        if (a < 0 || b < 0 || a >= vertices || b >= vertices || a == b) {
            throw std::invalid_argument("build_cluster: invalid edge");
        }
        unique_edges.insert({std::min(a, b), std::max(a, b)});
    }

    PolarizationRegister reg = PolarizationRegister::contiguous(vertices);
    std::vector<JonesVector> plus(static_cast<std::size_t>(vertices), jones_plus(0.0));
    StateVector sv = product_state(2 * vertices, vertices, reg, plus);
    for (const auto& [a, b] : unique_edges) {
        sv = apply_cz_ideal(sv, reg.rail(a), reg.rail(b));
    }

    GraphState g;
    g.vertices = vertices;
    g.edges.assign(unique_edges.begin(), unique_edges.end());
    g.realized = std::move(sv);
    return g;
}

// <psi| X_v Prod_{u in N(v)} Z_u |psi>; +1 on a graph state.
inline complexd stabilizer_expectation(const GraphState& g, int vertex) {
    if (vertex < 0 || vertex >= g.vertices) {
        throw std::invalid_argument("stabilizer_expectation: vertex out of range");
    }
    PolarizationRegister reg = PolarizationRegister::contiguous(g.vertices);
    StateVector sv = apply_pauli_x(g.realized, reg.rail(vertex));
    for (const auto& [a, b] : g.edges) {
        if (a == vertex) {
            sv = apply_pauli_z(sv, reg.rail(b));
        } else if (b == vertex) {
            sv = apply_pauli_z(sv, reg.rail(a));
        }
    }
    return inner_product(g.realized, sv);
}

// exp(-i theta Z / 2) and exp(-i theta X / 2).
inline Eigen::Matrix2cd rotation_z(double theta) {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
    m(0, 0) = std::exp(complexd(0.0, -theta / 2.0));
    m(1, 1) = std::exp(complexd(0.0, theta / 2.0));
    return m;
}

inline Eigen::Matrix2cd rotation_x(double theta) {
    Eigen::Matrix2cd m;
    double c = std::cos(theta / 2.0);
    complexd is(0.0, -std::sin(theta / 2.0));
    m << c, is, is, c;
    return m;
}

inline Eigen::Matrix2cd hadamard_matrix() {
    Eigen::Matrix2cd m;
    double s = 1.0 / std::sqrt(2.0);
    m << s, s, s, -s;
    return m;
}

// The gate a measured 4-photon line implements after byproduct correction.
inline Eigen::Matrix2cd mbqc_target_unitary(double alpha, double beta, double gamma) {
    return hadamard_matrix() * rotation_z(gamma) * rotation_x(beta) * rotation_z(alpha);
}

struct MbqcRecord {
    std::array<int, 3> outcomes{};       // 0 = first basis state, 1 = second
    std::array<double, 3> angles_used{};  // adaptive signs included
    StateVector output = StateVector::vacuum(1, 0);  // corrected final qubit (2 modes)
    JonesVector output_jones;
};

namespace detail {

// Measuring a cluster qubit "at angle a" projects with the bra
// (<H| +- e^{+ia}<V|)/sqrt2, which is the tilted(-a) basis of
// measure_polarization. Outcome s in {0, 1} applies X^s H Rz(a) to the
// logical state carried by the chain.
inline PolarizationBasis mbqc_basis(double angle) {
    return PolarizationBasis::tilted(-angle);
}

}  // namespace detail

// Runs the 4-photon linear-cluster computation of H Rz(gamma) Rx(beta)
// Rz(alpha) on the logical input |+>. Photons 1..3 are measured left to
// right at angles (alpha, +-beta, +-gamma); the signs are chosen adaptively
// from earlier outcomes, and the residual byproduct X^{s3} Z^{s2} X^{s1} is
// undone on the surviving photon at the end.
inline MbqcRecord mbqc_single_qubit(double alpha, double beta, double gamma,
                                    std::uint64_t seed) {
    GraphState line = build_cluster(4, {{0, 1}, {1, 2}, {2, 3}});
    StateVector sv = line.realized;
    SplitMix64 rng(seed);

    MbqcRecord rec;
    std::array<double, 3> base_angles{alpha, beta, gamma};
    for (int k = 0; k < 3; ++k) {
        double angle = base_angles[static_cast<std::size_t>(k)];
        if (k == 1 && rec.outcomes[0] == 1) {
            angle = -angle;
        }
        if (k == 2 && rec.outcomes[1] == 1) {
            angle = -angle;
        }
        rec.angles_used[static_cast<std::size_t>(k)] = angle;
        // The first unmeasured qubit always sits on modes (0, 1): each
        // destructive measurement removes its rail from the register.
        auto records = measure_polarization(sv, Rail{0, 1}, detail::mbqc_basis(angle));
        int s = rng.next_bernoulli(records[1].probability) ? 1 : 0;
        rec.outcomes[static_cast<std::size_t>(k)] = s;
        if (!records[static_cast<std::size_t>(s)].post_state.has_value()) {
            throw std::runtime_error("mbqc_single_qubit: empty branch selected");
        }
        sv = *records[static_cast<std::size_t>(s)].post_state;
    }

    // Undo B = X^{s3} Z^{s2} X^{s1} by applying its adjoint, rightmost
    // factor first.
    Rail out{0, 1};
    if (rec.outcomes[2] == 1) {
        sv = apply_pauli_x(sv, out);
    }
    if (rec.outcomes[1] == 1) {
        sv = apply_pauli_z(sv, out);
    }
    if (rec.outcomes[0] == 1) {
        sv = apply_pauli_x(sv, out);
    }

    rec.output_jones =
        JonesVector{sv.amplitude(FockState({1, 0})), sv.amplitude(FockState({0, 1}))};
    rec.output = std::move(sv);
    return rec;
}

}  // namespace photonic

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
#include <complex>
#include <numbers>

#include "photonic/elements.hpp"
#include "photonic/fock.hpp"
#include "photonic/rng.hpp"
#include "photonic/unitary.hpp"

using namespace photonic;

namespace {

double max_elementwise_deviation(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("50:50 beam splitter produces the two-photon bunching state", "[elements]") {
    StateVector in = StateVector::basis_state(2, FockState({1, 1}));
    StateVector out = apply_beam_splitter(in, 0, 1, std::numbers::pi / 4.0);
    double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(out.amplitude(FockState({2, 0})) - inv_sqrt2) < 1e-12);
    CHECK(std::abs(out.amplitude(FockState({0, 2})) + inv_sqrt2) < 1e-12);
    CHECK(std::abs(out.amplitude(FockState({1, 1}))) < 1e-12);
}

TEST_CASE("single photon splits into an equal superposition", "[elements]") {
    StateVector in = StateVector::basis_state(1, FockState({1, 0}));
    StateVector out = apply_beam_splitter(in, 0, 1, std::numbers::pi / 4.0);
    double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(out.amplitude(FockState({1, 0})) - inv_sqrt2) < 1e-12);
    CHECK(std::abs(out.amplitude(FockState({0, 1})) - inv_sqrt2) < 1e-12);
}

TEST_CASE("zero-angle beam splitter transmits with a reflection sign", "[elements]") {
    // At theta = 0 the mode map is diag(1, -1): fully transmissive, but the
    // second mode keeps the pi reflection phase baked into the convention.
    // States with even occupation of the second mode pass through untouched;
    // odd occupation picks up a sign.  Probabilities are always unchanged.
    StateVector even = StateVector::basis_state(3, FockState({2, 0}));
    StateVector even_out = apply_beam_splitter(even, 0, 1, 0.0);
    CHECK(std::abs(even_out.amplitude(FockState({2, 0})) - 1.0) < 1e-12);
    CHECK(even_out.amplitudes().size() == 1);

    StateVector odd = StateVector::basis_state(3, FockState({2, 1}));
    StateVector odd_out = apply_beam_splitter(odd, 0, 1, 0.0);
    CHECK(std::abs(odd_out.amplitude(FockState({2, 1})) + 1.0) < 1e-12);
    CHECK(odd_out.amplitudes().size() == 1);
}

TEST_CASE("phase shifter multiplies by exp(i n phi)", "[elements]") {
    AmplitudeMap amps;
    amps[FockState({0})] = 1.0 / std::sqrt(2.0);
    amps[FockState({2})] = 1.0 / std::sqrt(2.0);
    StateVector in = StateVector::from_amplitudes(1, 2, amps);
    double phi = 0.7;
    StateVector out = apply_phase_shifter(in, 0, phi);
    complexd i(0.0, 1.0);
    CHECK(std::abs(out.amplitude(FockState({0})) - complexd(1.0 / std::sqrt(2.0))) < 1e-14);
    CHECK(std::abs(out.amplitude(FockState({2})) -
                   std::exp(i * (2.0 * phi)) / std::sqrt(2.0)) < 1e-14);
}

TEST_CASE("wave plates act as their Jones matrices", "[elements]") {
    // |H> on rail (0,1)
    StateVector h = StateVector::basis_state(1, FockState({1, 0}));

    SECTION("quarter-wave plate at 45 degrees gives left circular") {
        StateVector out = apply_quarter_wave_plate(h, 0, 1, std::numbers::pi / 4.0);
        complexd i(0.0, 1.0);
        CHECK(std::abs(out.amplitude(FockState({1, 0})) - 1.0 / std::sqrt(2.0)) < 1e-12);
        CHECK(std::abs(out.amplitude(FockState({0, 1})) - i / std::sqrt(2.0)) < 1e-12);
    }

    SECTION("half-wave plate at 22.5 degrees gives diagonal") {
        StateVector out = apply_half_wave_plate(h, 0, 1, std::numbers::pi / 8.0);
        CHECK(std::abs(out.amplitude(FockState({1, 0})) - 1.0 / std::sqrt(2.0)) < 1e-12);
        CHECK(std::abs(out.amplitude(FockState({0, 1})) - 1.0 / std::sqrt(2.0)) < 1e-12);
    }

    SECTION("half-wave plate at 0 degrees flips the sign of V") {
        StateVector v = StateVector::basis_state(1, FockState({0, 1}));
        StateVector out = apply_half_wave_plate(v, 0, 1, 0.0);
        CHECK(std::abs(out.amplitude(FockState({0, 1})) + 1.0) < 1e-12);
    }
}

TEST_CASE("polarizing beam splitter passes H and swaps V", "[elements]") {
    // rails a=(0,1), b=(2,3); one V photon on rail a, one H photon on rail b
    StateVector in = StateVector::basis_state(2, FockState({0, 1, 1, 0}));
    StateVector out = apply_polarizing_beam_splitter(in, PolarizingBeamSplitter{0, 1, 2, 3});
    CHECK(std::abs(out.amplitude(FockState({0, 0, 1, 1})) - 1.0) < 1e-14);
}

TEST_CASE("element unitaries are unitary and match their action", "[elements]") {
    SplitMix64 rng(321);
    std::vector<Element> elements = {
        BeamSplitter{0, 2, 0.3},
        PhaseShifter{1, 1.1},
        HalfWavePlate{0, 1, 0.4},
        QuarterWavePlate{2, 3, 1.0},
        PolarizingBeamSplitter{0, 1, 2, 3},
    };
    for (const Element& el : elements) {
        ModeUnitary u = element_unitary(el, 4);
        Eigen::MatrixXcd gram = u.matrix().adjoint() * u.matrix();
        CHECK(max_elementwise_deviation(gram, Eigen::MatrixXcd::Identity(4, 4)) < 1e-12);
        // action on a random 2-photon state matches the permanent lift
        AmplitudeMap amps;
        for (const auto& fs : enumerate_basis(4, 2)) {
            amps[fs] = complexd(rng.next_normal(), rng.next_normal());
        }
        StateVector sv = StateVector::from_amplitudes(4, 2, amps).normalized();
        StateVector fast = apply_element(sv, el);
        StateVector oracle = apply_mode_unitary(sv, u);
        for (const auto& fs : enumerate_basis(4, 2)) {
            CHECK(std::abs(fast.amplitude(fs) - oracle.amplitude(fs)) < 1e-10);
        }
    }
}

TEST_CASE("circuits compose left to right", "[elements]") {
    Circuit c(2);
    c.add(BeamSplitter{0, 1, 0.3});
    c.add(PhaseShifter{0, 0.9});
    Eigen::MatrixXcd expected =
        element_unitary(PhaseShifter{0, 0.9}, 2).matrix() *
        element_unitary(BeamSplitter{0, 1, 0.3}, 2).matrix();
    CHECK(max_elementwise_deviation(circuit_to_unitary(c).matrix(), expected) < 1e-14);
}

TEST_CASE("circuit application conserves photon number and norm", "[elements]") {
    SplitMix64 rng(555);
    Circuit c(3);
    c.add(BeamSplitter{0, 1, 0.77});
    c.add(PhaseShifter{2, 2.2});
    c.add(BeamSplitter{1, 2, 1.1});
    StateVector in = StateVector::basis_state(3, FockState({1, 1, 1}));
    StateVector out = apply_circuit(in, c);
    CHECK(out.squared_norm() == Catch::Approx(1.0).margin(1e-12));
    for (const auto& [fs, amp] : out.amplitudes()) {
        CHECK(fs.total() == 3);
    }
}

TEST_CASE("circuit validation rejects bad mode indices", "[elements]") {
    Circuit c(2);
    CHECK_THROWS_AS(c.add(BeamSplitter{0, 2, 0.1}), std::invalid_argument);
    CHECK_THROWS_AS(c.add(BeamSplitter{1, 1, 0.1}), std::invalid_argument);
}

TEST_CASE("reck decomposition round-trips representative unitaries", "[elements]") {
    SECTION("identity becomes an empty circuit") {
        Circuit c = reck_decompose(ModeUnitary::identity(3));
        CHECK(c.elements().empty());
    }

    SECTION("a 50:50 matrix becomes a single beam splitter") {
        Eigen::MatrixXcd m(2, 2);
        double s = 1.0 / std::sqrt(2.0);
        m << s, s, s, -s;
        Circuit c = reck_decompose(ModeUnitary(m));
        int bs_count = 0;
        for (const auto& el : c.elements()) {
            if (std::holds_alternative<BeamSplitter>(el)) {
                ++bs_count;
                CHECK(std::get<BeamSplitter>(el).theta ==
                      Catch::Approx(std::numbers::pi / 4.0).margin(1e-12));
            }
        }
        CHECK(bs_count == 1);
        CHECK(max_elementwise_deviation(circuit_to_unitary(c).matrix(), m) < 1e-10);
    }

    SECTION("random unitaries round-trip within 1e-10") {
        SplitMix64 rng(8080);
        for (int dim = 2; dim <= 5; ++dim) {
            for (int trial = 0; trial < 8; ++trial) {
                ModeUnitary u = haar_unitary(dim, rng);
                Circuit c = reck_decompose(u);
                CHECK(max_elementwise_deviation(circuit_to_unitary(c).matrix(), u.matrix()) <
                      1e-10);
            }
        }
    }
}

TEST_CASE("no linear-optical circuit turns H,H into a Bell state", "[elements]") {
    // Dual-rail encoding on 4 modes: rail 1 = (0,1), rail 2 = (2,3).
    // Input |H,H> = |1,0,1,0>; target (|H,H> + |V,V>)/sqrt(2).
    // The fidelity tracks |<Bell| U |in>|^2 over random interferometers and
    // must stay bounded away from 1.
    SplitMix64 rng(123456);
    FockState in({1, 0, 1, 0});
    FockState hh({1, 0, 1, 0});
    FockState vv({0, 1, 0, 1});
    const int trials = 10000;
    double best = 0.0;
    for (int t = 0; t < trials; ++t) {
        ModeUnitary u = haar_unitary(4, rng);
        complexd overlap = (transition_amplitude(u, in, hh) + transition_amplitude(u, in, vv)) /
                           std::sqrt(2.0);
        best = std::max(best, std::norm(overlap));
    }
    CHECK(best < 1.0 - 1e-6);
}

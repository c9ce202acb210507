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
#include <map>
#include <numbers>
#include <vector>

#include "photonic/measurement.hpp"
#include "photonic/polarization.hpp"

using photonic::BellAnalyzer;
using photonic::BellKind;
using photonic::FockState;
using photonic::JonesVector;
using photonic::MeasurementRecord;
using photonic::PolarizationBasis;
using photonic::PolarizationRegister;
using photonic::Rail;
using photonic::SplitMix64;
using photonic::StateVector;
using photonic::complexd;

namespace {

// Random two-qubit state in the dual-rail single-photon-per-rail span.
StateVector random_two_qubit_state(SplitMix64& rng) {
    photonic::AmplitudeMap amps;
    const std::vector<std::vector<int>> patterns{
        {1, 0, 1, 0}, {1, 0, 0, 1}, {0, 1, 1, 0}, {0, 1, 0, 1}};
    double norm2 = 0.0;
    std::vector<complexd> cs;
    for (std::size_t i = 0; i < patterns.size(); ++i) {
        complexd c(rng.next_normal(), rng.next_normal());
        cs.push_back(c);
        norm2 += std::norm(c);
    }
    for (std::size_t i = 0; i < patterns.size(); ++i) {
        amps[FockState(patterns[i])] = cs[i] / std::sqrt(norm2);
    }
    return StateVector::from_amplitudes(4, 2, amps);
}

}  // namespace

TEST_CASE("register construction rejects clashing rails", "[measurement]") {
    CHECK_THROWS(PolarizationRegister({Rail{0, 0}}));
    CHECK_THROWS(PolarizationRegister({Rail{0, 1}, Rail{1, 2}}));
    CHECK_THROWS(PolarizationRegister({Rail{-1, 0}}));
    PolarizationRegister reg = PolarizationRegister::contiguous(3);
    CHECK(reg.qubit_count() == 3);
    CHECK(reg.rail(2).h == 4);
    CHECK(reg.rail(2).v == 5);
    CHECK(reg.mode_count() == 6);
}

TEST_CASE("pauli gates act as expected on dual-rail qubits", "[measurement]") {
    Rail r{0, 1};
    StateVector h = photonic::polarized_photon(2, 2, r, photonic::jones_h());
    StateVector v = photonic::polarized_photon(2, 2, r, photonic::jones_v());

    StateVector xh = photonic::apply_pauli_x(h, r);
    CHECK(std::abs(photonic::inner_product(v, xh) - 1.0) < 1e-14);

    StateVector zv = photonic::apply_pauli_z(v, r);
    CHECK(std::abs(photonic::inner_product(v, zv) + 1.0) < 1e-14);

    StateVector yh = photonic::apply_pauli_y(h, r);
    CHECK(std::abs(photonic::inner_product(v, yh) - complexd(0.0, 1.0)) < 1e-14);

    // XZ on |V> : Z gives -|V>, then X maps to -|H>.
    StateVector xzv = photonic::apply_pauli_x(photonic::apply_pauli_z(v, r), r);
    CHECK(std::abs(photonic::inner_product(h, xzv) + 1.0) < 1e-14);
}

TEST_CASE("bell states are orthonormal", "[measurement]") {
    Rail a{0, 1};
    Rail b{2, 3};
    std::vector<BellKind> kinds{BellKind::PhiPlus, BellKind::PhiMinus, BellKind::PsiPlus,
                                BellKind::PsiMinus};
    for (std::size_t i = 0; i < kinds.size(); ++i) {
        for (std::size_t j = 0; j < kinds.size(); ++j) {
            StateVector si = photonic::bell_state(4, 2, a, b, kinds[i]);
            StateVector sj = photonic::bell_state(4, 2, a, b, kinds[j]);
            double expected = (i == j) ? 1.0 : 0.0;
            CHECK(std::abs(photonic::inner_product(si, sj) - expected) < 1e-14);
        }
    }
}

TEST_CASE("bell projectors resolve the identity on the two-qubit span", "[measurement]") {
    Rail a{0, 1};
    Rail b{2, 3};
    const std::vector<std::vector<int>> span{
        {1, 0, 1, 0}, {1, 0, 0, 1}, {0, 1, 1, 0}, {0, 1, 0, 1}};
    for (std::size_t x = 0; x < span.size(); ++x) {
        for (std::size_t y = 0; y < span.size(); ++y) {
            StateVector sx = StateVector::basis_state(4, FockState(span[x]));
            StateVector sy = StateVector::basis_state(4, FockState(span[y]));
            complexd sum = 0.0;
            for (BellKind kind : {BellKind::PhiPlus, BellKind::PhiMinus, BellKind::PsiPlus,
                                  BellKind::PsiMinus}) {
                StateVector bell = photonic::bell_state(4, 2, a, b, kind);
                sum += photonic::inner_product(sx, bell) * photonic::inner_product(bell, sy);
            }
            double expected = (x == y) ? 1.0 : 0.0;
            CHECK(std::abs(sum - expected) < 1e-12);
        }
    }
}

TEST_CASE("single photon is detected with certainty in its own mode", "[measurement]") {
    StateVector sv = StateVector::basis_state(2, FockState({1, 0}));
    MeasurementRecord rec = photonic::detect_number(sv, 0, 1);
    CHECK(rec.probability == 1.0);
    REQUIRE(rec.post_state.has_value());
    CHECK(rec.post_state->mode_count() == 1);
    CHECK(std::abs(rec.post_state->amplitude(FockState({0})) - 1.0) < 1e-14);
}

TEST_CASE("delocalized photon is found half the time", "[measurement]") {
    photonic::AmplitudeMap amps;
    double s = 1.0 / std::sqrt(2.0);
    amps[FockState({1, 0})] = s;
    amps[FockState({0, 1})] = s;
    StateVector sv = StateVector::from_amplitudes(2, 1, amps);
    MeasurementRecord rec = photonic::detect_number(sv, 0, 1);
    CHECK(std::abs(rec.probability - 0.5) < 1e-14);
    REQUIRE(rec.post_state.has_value());
    // Conditioned on seeing the photon in mode 0, the other mode is empty.
    CHECK(std::abs(rec.post_state->amplitude(FockState({0})) - 1.0) < 1e-12);
}

TEST_CASE("number projection is repeatable", "[measurement]") {
    photonic::AmplitudeMap amps;
    amps[FockState({2, 0})] = 0.5;
    amps[FockState({1, 1})] = std::sqrt(0.5);
    amps[FockState({0, 2})] = 0.5;
    StateVector sv = StateVector::from_amplitudes(2, 2, amps);
    MeasurementRecord first = photonic::project_number(sv, 0, 1);
    CHECK(std::abs(first.probability - 0.5) < 1e-12);
    REQUIRE(first.post_state.has_value());
    MeasurementRecord second = photonic::project_number(*first.post_state, 0, 1);
    CHECK(std::abs(second.probability - 1.0) < 1e-12);
}

TEST_CASE("number detection outcomes are complete", "[measurement]") {
    SplitMix64 rng(0x77AA11);
    for (int trial = 0; trial < 20; ++trial) {
        photonic::AmplitudeMap amps;
        double norm2 = 0.0;
        std::map<int, complexd> raw;
        for (const FockState& fs : photonic::enumerate_basis(3, 3)) {
            complexd c(rng.next_normal(), rng.next_normal());
            amps[fs] = c;
            norm2 += std::norm(c);
        }
        for (auto& [fs, c] : amps) {
            c /= std::sqrt(norm2);
        }
        StateVector sv = StateVector::from_amplitudes(3, 3, amps);
        double total = 0.0;
        for (int n = 0; n <= 3; ++n) {
            total += photonic::project_number(sv, 1, n).probability;
        }
        CHECK(std::abs(total - 1.0) < 1e-10);
    }
}

TEST_CASE("pattern detection post-selects joint counts", "[measurement]") {
    Rail a{0, 1};
    Rail b{2, 3};
    StateVector phi = photonic::bell_state(4, 2, a, b, BellKind::PhiPlus);
    MeasurementRecord hh = photonic::detect_pattern(phi, {0, 2}, {1, 1});
    CHECK(std::abs(hh.probability - 0.5) < 1e-14);
    REQUIRE(hh.post_state.has_value());
    CHECK(hh.post_state->mode_count() == 2);
    CHECK(std::abs(hh.post_state->amplitude(FockState({0, 0})) - 1.0) < 1e-12);

    MeasurementRecord none = photonic::detect_pattern(phi, {0, 2}, {0, 0});
    CHECK(std::abs(none.probability - 0.5) < 1e-14);
    REQUIRE(none.post_state.has_value());
    CHECK(std::abs(none.post_state->amplitude(FockState({1, 1})) - 1.0) < 1e-12);

    CHECK_THROWS(photonic::detect_pattern(phi, {0, 0}, {1, 1}));
    CHECK_THROWS(photonic::detect_pattern(phi, {0}, {1, 0}));
}

TEST_CASE("circular light splits evenly in the linear basis", "[measurement]") {
    Rail r{0, 1};
    StateVector l = photonic::polarized_photon(2, 1, r, photonic::jones_left());
    auto recs = photonic::measure_polarization(l, r, PolarizationBasis::hv());
    CHECK(recs[0].outcome == "H");
    CHECK(std::abs(recs[0].probability - 0.5) < 1e-12);
    CHECK(recs[1].outcome == "V");
    CHECK(std::abs(recs[1].probability - 0.5) < 1e-12);
    // The photon is absorbed and the full register was consumed.
    CHECK_FALSE(recs[0].post_state.has_value());
}

TEST_CASE("basis eigenstates are measured deterministically", "[measurement]") {
    Rail r{0, 1};
    StateVector h = photonic::polarized_photon(2, 1, r, photonic::jones_h());
    auto hv = photonic::measure_polarization(h, r, PolarizationBasis::hv());
    CHECK(std::abs(hv[0].probability - 1.0) < 1e-12);
    CHECK(std::abs(hv[1].probability - 0.0) < 1e-12);

    double alpha = 0.7;
    StateVector plus = photonic::polarized_photon(2, 1, r, photonic::jones_plus(alpha));
    auto pm = photonic::measure_polarization(plus, r, PolarizationBasis::tilted(alpha));
    CHECK(pm[0].outcome == "+");
    CHECK(std::abs(pm[0].probability - 1.0) < 1e-12);

    StateVector lv = photonic::polarized_photon(2, 1, r, photonic::jones_left());
    auto lr = photonic::measure_polarization(lv, r, PolarizationBasis::lr());
    CHECK(std::abs(lr[0].probability - 1.0) < 1e-12);
}

TEST_CASE("polarization projection is repeatable and complete", "[measurement]") {
    SplitMix64 rng(0xBEEF01);
    Rail r{0, 1};
    for (int trial = 0; trial < 20; ++trial) {
        JonesVector jv{complexd(rng.next_normal(), rng.next_normal()),
                       complexd(rng.next_normal(), rng.next_normal())};
        StateVector sv = photonic::polarized_photon(2, 1, r, jv);
        double alpha = rng.next_double() * 2.0 * std::numbers::pi;
        PolarizationBasis basis = PolarizationBasis::tilted(alpha);
        auto recs = photonic::project_polarization(sv, r, basis);
        CHECK(std::abs(recs[0].probability + recs[1].probability - 1.0) < 1e-10);
        for (const auto& rec : recs) {
            if (rec.probability > 1e-6) {
                REQUIRE(rec.post_state.has_value());
                auto again = photonic::project_polarization(*rec.post_state, r, basis);
                double repeat =
                    (rec.outcome == again[0].outcome) ? again[0].probability
                                                      : again[1].probability;
                CHECK(std::abs(repeat - 1.0) < 1e-12);
            }
        }
    }
}

TEST_CASE("measuring a rail with the wrong occupancy throws", "[measurement]") {
    StateVector two = StateVector::basis_state(2, FockState({2, 0}));
    CHECK_THROWS(photonic::measure_polarization(two, Rail{0, 1}, PolarizationBasis::hv()));
    StateVector none = StateVector::vacuum(2, 1);
    CHECK_THROWS(photonic::measure_polarization(none, Rail{0, 1}, PolarizationBasis::hv()));
}

TEST_CASE("ideal bell measurement identifies bell states", "[measurement]") {
    Rail a{0, 1};
    Rail b{2, 3};
    StateVector phi = photonic::bell_state(4, 2, a, b, BellKind::PhiPlus);
    auto recs = photonic::bell_measure(phi, a, b, BellAnalyzer::Ideal);
    REQUIRE(recs.size() == 4);
    CHECK(recs[0].outcome == "phi+");
    CHECK(std::abs(recs[0].probability - 1.0) < 1e-12);
    for (std::size_t k = 1; k < 4; ++k) {
        CHECK(recs[k].probability < 1e-12);
    }
}

TEST_CASE("|H,H> never triggers a psi outcome", "[measurement]") {
    Rail a{0, 1};
    Rail b{2, 3};
    PolarizationRegister reg({a, b});
    StateVector hh = photonic::product_state(4, 2, reg,
                                             {photonic::jones_h(), photonic::jones_h()});
    auto recs = photonic::bell_measure(hh, a, b, BellAnalyzer::Ideal);
    std::map<std::string, double> p;
    for (const auto& rec : recs) {
        p[rec.outcome] += rec.probability;
    }
    CHECK(std::abs(p["phi+"] - 0.5) < 1e-12);
    CHECK(std::abs(p["phi-"] - 0.5) < 1e-12);
    CHECK(p["psi+"] < 1e-12);
    CHECK(p["psi-"] < 1e-12);
}

TEST_CASE("ideal bell outcomes are complete on random two-qubit states", "[measurement]") {
    SplitMix64 rng(0x5151);
    Rail a{0, 1};
    Rail b{2, 3};
    for (int trial = 0; trial < 20; ++trial) {
        StateVector sv = random_two_qubit_state(rng);
        auto recs = photonic::bell_measure(sv, a, b, BellAnalyzer::Ideal);
        double total = 0.0;
        for (const auto& rec : recs) {
            total += rec.probability;
        }
        CHECK(std::abs(total - 1.0) < 1e-10);
    }
}

TEST_CASE("passive analyzer resolves psi states and fails on phi states", "[measurement]") {
    Rail a{0, 1};
    Rail b{2, 3};
    std::map<BellKind, std::map<std::string, double>> table;
    for (BellKind kind : {BellKind::PhiPlus, BellKind::PhiMinus, BellKind::PsiPlus,
                          BellKind::PsiMinus}) {
        StateVector sv = photonic::bell_state(4, 2, a, b, kind);
        auto recs = photonic::bell_measure(sv, a, b, BellAnalyzer::LinearOptical);
        double total = 0.0;
        for (const auto& rec : recs) {
            table[kind][rec.outcome] += rec.probability;
            total += rec.probability;
        }
        CHECK(std::abs(total - 1.0) < 1e-10);
    }
    CHECK(std::abs(table[BellKind::PsiPlus]["psi+"] - 1.0) < 1e-12);
    CHECK(std::abs(table[BellKind::PsiMinus]["psi-"] - 1.0) < 1e-12);
    CHECK(std::abs(table[BellKind::PhiPlus]["fail"] - 1.0) < 1e-12);
    CHECK(std::abs(table[BellKind::PhiMinus]["fail"] - 1.0) < 1e-12);
    CHECK(table[BellKind::PsiPlus]["psi-"] < 1e-12);
    CHECK(table[BellKind::PsiMinus]["psi+"] < 1e-12);
}

TEST_CASE("passive analyzer succeeds half the time on average", "[measurement]") {
    // On any Bell-state input the two phi outcomes merge into "fail"; over
    // the uniform Bell mixture the analyzer succeeds with probability 1/2.
    Rail a{0, 1};
    Rail b{2, 3};
    double success = 0.0;
    for (BellKind kind : {BellKind::PhiPlus, BellKind::PhiMinus, BellKind::PsiPlus,
                          BellKind::PsiMinus}) {
        StateVector sv = photonic::bell_state(4, 2, a, b, kind);
        for (const auto& rec : photonic::bell_measure(sv, a, b, BellAnalyzer::LinearOptical)) {
            if (rec.outcome != "fail") {
                success += 0.25 * rec.probability;
            }
        }
    }
    CHECK(std::abs(success - 0.5) < 1e-12);
}

TEST_CASE("teleportation joint state gives four equal bell outcomes", "[measurement]") {
    PolarizationRegister reg = PolarizationRegister::contiguous(3);
    StateVector qubit =
        photonic::polarized_photon(6, 3, reg.rail(0), JonesVector{0.6, 0.8});
    StateVector pair =
        photonic::bell_state(6, 3, reg.rail(1), reg.rail(2), BellKind::PhiPlus);
    // Merge the product: qubit occupies rail 0, the pair rails 1 and 2.
    photonic::AmplitudeMap amps;
    for (const auto& [fq, aq] : qubit.amplitudes()) {
        for (const auto& [fp, ap] : pair.amplitudes()) {
            FockState merged = fq;
            for (std::size_t m = 0; m < merged.occ.size(); ++m) {
                merged.occ[m] += fp.occ[m];
            }
            amps[merged] = aq * ap;
        }
    }
    StateVector joint = StateVector::from_amplitudes(6, 3, amps);
    auto recs = photonic::bell_measure(joint, reg.rail(0), reg.rail(1), BellAnalyzer::Ideal);
    REQUIRE(recs.size() == 4);
    for (const auto& rec : recs) {
        CHECK(std::abs(rec.probability - 0.25) < 1e-12);
        REQUIRE(rec.post_state.has_value());
        CHECK(rec.post_state->mode_count() == 2);
        CHECK(std::abs(rec.post_state->squared_norm() - 1.0) < 1e-12);
    }
}

TEST_CASE("lossy detector thins the photon count", "[measurement]") {
    StateVector one = StateVector::basis_state(1, FockState({1}));
    SplitMix64 rng(42);
    for (int i = 0; i < 100; ++i) {
        CHECK(photonic::lossy_detect(one, 0, 1.0, rng) == 1);
        CHECK(photonic::lossy_detect(one, 0, 0.0, rng) == 0);
    }

    StateVector two = StateVector::basis_state(2, FockState({2}));
    int clicks = 0;
    const int shots = 100000;
    for (int i = 0; i < shots; ++i) {
        if (photonic::lossy_detect(two, 0, 0.6, rng) >= 1) {
            ++clicks;
        }
    }
    // P(at least one of two photons seen) = 1 - 0.4^2 = 0.84.
    double rate = static_cast<double>(clicks) / shots;
    CHECK(std::abs(rate - 0.84) < 0.005);

    CHECK_THROWS(photonic::lossy_detect(two, 0, 1.5, rng));
    CHECK_THROWS(photonic::lossy_detect(two, 0, -0.1, rng));
}

TEST_CASE("qubit fidelity matches direct overlaps", "[measurement]") {
    Rail r{0, 1};
    StateVector l = photonic::polarized_photon(2, 1, r, photonic::jones_left());
    CHECK(std::abs(photonic::qubit_fidelity(l, r, photonic::jones_left()) - 1.0) < 1e-14);
    CHECK(photonic::qubit_fidelity(l, r, photonic::jones_right()) < 1e-14);
    CHECK(std::abs(photonic::qubit_fidelity(l, r, photonic::jones_h()) - 0.5) < 1e-14);
}

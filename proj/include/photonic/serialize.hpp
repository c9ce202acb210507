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

#include <nlohmann/json.hpp>

#include <charconv>
#include <stdexcept>
#include <string>
#include <system_error>
#include <variant>
#include <vector>

#include "photonic/compute.hpp"
#include "photonic/elements.hpp"
#include "photonic/fock.hpp"
#include "photonic/measurement.hpp"

namespace photonic {

// Key order is preserved everywhere so that serialized output is
// byte-stable across runs.
using json = nlohmann::ordered_json;

// --- states ---------------------------------------------------------------

// Amplitudes appear in the canonical basis order of the state's internal
// map, one record per kept component.
inline json state_to_json(const StateVector& sv) {
    json j;
    j["mode_count"] = sv.mode_count();
    j["cutoff"] = sv.cutoff();
    j["truncation_loss"] = sv.truncation_loss();
    json amps = json::array();
    for (const auto& [fs, amp] : sv.amplitudes()) {
        json entry;
        entry["occ"] = fs.occ;
        entry["re"] = amp.real();
        entry["im"] = amp.imag();
        amps.push_back(std::move(entry));
    }
    j["amplitudes"] = std::move(amps);
    return j;
}

inline StateVector state_from_json(const json& j) {
    if (!j.contains("mode_count") || !j.contains("cutoff") || !j.contains("amplitudes")) {
        throw std::invalid_argument("state_from_json: missing field");
    }
    int modes = j.at("mode_count").get<int>();
    int cutoff = j.at("cutoff").get<int>();
    AmplitudeMap amps;
    for (const auto& entry : j.at("amplitudes")) {
        FockState fs(entry.at("occ").get<std::vector<int>>());
        if (fs.modes() != modes) {
            throw std::invalid_argument("state_from_json: occupation length mismatch");
        }
        amps[fs] = complexd(entry.at("re").get<double>(), entry.at("im").get<double>());
    }
    StateVector sv = StateVector::from_amplitudes(modes, cutoff, amps);
    if (j.contains("truncation_loss")) {
        sv.add_truncation_loss(j.at("truncation_loss").get<double>());
    }
    return sv;
}

// --- circuits ---------------------------------------------------------------

inline json element_to_json(const Element& el) {
    json j;
    j["kind"] = element_kind(el);
    j["modes"] = element_modes(el);
    json params = json::object();
    std::visit(
        [&](const auto& e) {
            using T = std::decay_t<decltype(e)>;
            if constexpr (std::is_same_v<T, BeamSplitter>) {
                params["theta"] = e.theta;
            } else if constexpr (std::is_same_v<T, PhaseShifter>) {
                params["phi"] = e.phi;
            } else if constexpr (std::is_same_v<T, HalfWavePlate> ||
                                 std::is_same_v<T, QuarterWavePlate>) {
                params["axis"] = e.axis;
            }
        },
        el);
    j["params"] = std::move(params);
    return j;
}

inline json circuit_to_json(const Circuit& c) {
    json j;
    j["mode_count"] = c.mode_count();
    json elements = json::array();
    for (const auto& el : c.elements()) {
        elements.push_back(element_to_json(el));
    }
    j["elements"] = std::move(elements);
    return j;
}

inline Element element_from_json(const json& j) {
    std::string kind = j.at("kind").get<std::string>();
    std::vector<int> modes = j.at("modes").get<std::vector<int>>();
    const json& params = j.at("params");
    if (kind == "beam_splitter") {
        if (modes.size() != 2) {
            throw std::invalid_argument("element_from_json: beam_splitter wants 2 modes");
        }
        return BeamSplitter{modes[0], modes[1], params.at("theta").get<double>()};
    }
    if (kind == "phase_shifter") {
        if (modes.size() != 1) {
            throw std::invalid_argument("element_from_json: phase_shifter wants 1 mode");
        }
        return PhaseShifter{modes[0], params.at("phi").get<double>()};
    }
    if (kind == "half_wave_plate") {
        if (modes.size() != 2) {
            throw std::invalid_argument("element_from_json: half_wave_plate wants 2 modes");
        }
        return HalfWavePlate{modes[0], modes[1], params.at("axis").get<double>()};
    }
    if (kind == "quarter_wave_plate") {
        if (modes.size() != 2) {
            throw std::invalid_argument("element_from_json: quarter_wave_plate wants 2 modes");
        }
        return QuarterWavePlate{modes[0], modes[1], params.at("axis").get<double>()};
    }
    if (kind == "polarizing_beam_splitter") {
        if (modes.size() != 4) {
            throw std::invalid_argument(
                "element_from_json: polarizing_beam_splitter wants 4 modes");
        }
        return PolarizingBeamSplitter{modes[0], modes[1], modes[2], modes[3]};
    }
    throw std::invalid_argument("element_from_json: unknown kind " + kind);
}

inline Circuit circuit_from_json(const json& j) {
    Circuit c(j.at("mode_count").get<int>());
    for (const auto& entry : j.at("elements")) {
        c.add(element_from_json(entry));
    }
    return c;
}

// --- graphs and measurement records -----------------------------------------

inline json graph_to_json(const GraphState& g) {
    json j;
    j["vertices"] = g.vertices;
    json edges = json::array();
    for (const auto& [a, b] : g.edges) {
        edges.push_back(json::array({a, b}));
    }
    j["edges"] = std::move(edges);
    return j;
}

inline GraphState graph_from_json(const json& j) {
    int vertices = j.at("vertices").get<int>();
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2) {
            throw std::invalid_argument("graph_from_json: edge must be a pair");
        }
        edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    return build_cluster(vertices, edges);
}

inline json record_to_json(const MeasurementRecord& rec) {
    json j;
    j["outcome"] = rec.outcome;
    j["probability"] = rec.probability;
    if (rec.post_state.has_value()) {
        j["post_state"] = state_to_json(*rec.post_state);
    }
    return j;
}

// --- CSV ---------------------------------------------------------------------

// Shortest representation that round-trips exactly; '.' decimal separator,
// no grouping. This keeps CSV output byte-stable.
inline std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc()) {
        throw std::runtime_error("format_double: conversion failed");
    }
    return std::string(buf, ptr);
}

using CsvCell = std::variant<std::string, double, long long>;

inline std::string csv_row(const std::vector<CsvCell>& cells) {
    std::string line;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i > 0) {
            line += ',';
        }
        std::visit(
            [&](const auto& v) {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, std::string>) {
                    line += v;
                } else if constexpr (std::is_same_v<T, double>) {
                    line += format_double(v);
                } else {
                    line += std::to_string(v);
                }
            },
            cells[i]);
    }
    line += '\n';
    return line;
}

// Header plus rows; the header is always present.
inline std::string csv_table(const std::vector<std::string>& header,
                             const std::vector<std::vector<CsvCell>>& rows) {
    std::vector<CsvCell> head;
    for (const auto& h : header) {
        head.emplace_back(h);
    }
    std::string out = csv_row(head);
    for (const auto& row : rows) {
        if (row.size() != header.size()) {
            throw std::invalid_argument("csv_table: row width mismatch");
        }
        out += csv_row(row);
    }
    return out;
}

}  // namespace photonic

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

// Command-line experiment runner. Every protocol in the library is exposed
// as a subcommand that takes typed flags, runs under a single master seed,
// and writes a machine-readable report (JSON envelope or bare CSV table) to
// stdout or a file. Reports are byte-deterministic for a fixed (config,
// seed); wall-clock timing goes to stderr so it never perturbs the output.
//
// Seed discipline: a subcommand never feeds the master seed to a consumer
// directly. The k-th independent random consumer receives
// derive_seed(master, k), with k assigned in a fixed documented order, so
// enlarging a run does not change the draws of earlier sub-runs.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "photonic/comm.hpp"
#include "photonic/compute.hpp"
#include "photonic/metrology.hpp"
#include "photonic/photon_stats.hpp"
#include "photonic/serialize.hpp"

namespace {

using photonic::complexd;
using photonic::CsvCell;
using photonic::json;
using photonic::Rail;
using photonic::SplitMix64;
using photonic::StateVector;

struct OutputOptions {
    std::string format = "json";
    std::string path;
};

void add_output_flags(CLI::App* cmd, const std::shared_ptr<OutputOptions>& out,
                      const std::string& default_format) {
    out->format = default_format;
    cmd->add_option("--format", out->format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    cmd->add_option("--output", out->path, "Write the report to this file instead of stdout");
}

// JSON gets the versioned envelope; CSV is the bare table with a header row.
void write_report(const OutputOptions& out, const std::string& experiment,
                  const json& config, const json& results, const std::string& csv_text) {
    std::string text;
    if (out.format == "csv") {
        text = csv_text;
    } else {
        json report;
        report["schema_version"] = "1";
        report["experiment"] = experiment;
        report["config"] = config;
        report["results"] = results;
        text = report.dump(2) + "\n";
    }
    if (out.path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream file(out.path, std::ios::binary);
    if (!file) {
        throw std::runtime_error("cannot open output file: " + out.path);
    }
    file << text;
}

std::string kv_csv(const std::vector<std::pair<std::string, CsvCell>>& metrics) {
    std::vector<std::vector<CsvCell>> rows;
    rows.reserve(metrics.size());
    for (const auto& [name, value] : metrics) {
        rows.push_back({CsvCell(name), value});
    }
    return photonic::csv_table({"metric", "value"}, rows);
}

std::vector<double> symmetric_grid(double max_abs, int steps) {
    if (steps < 1) {
        throw std::invalid_argument("step count must be >= 1");
    }
    if (max_abs <= 0.0) {
        throw std::invalid_argument("grid half width must be positive");
    }
    std::vector<double> xs;
    xs.reserve(static_cast<std::size_t>(steps));
    if (steps == 1) {
        xs.push_back(0.0);
        return xs;
    }
    for (int i = 0; i < steps; ++i) {
        xs.push_back(-max_abs + 2.0 * max_abs * static_cast<double>(i) /
                                     static_cast<double>(steps - 1));
    }
    return xs;
}

photonic::JonesVector random_jones(SplitMix64& rng) {
    complexd h(rng.next_normal(), rng.next_normal());
    complexd v(rng.next_normal(), rng.next_normal());
    double n = std::sqrt(std::norm(h) + std::norm(v));
    if (n < 1e-12) {
        return photonic::jones_h();
    }
    return {h / n, v / n};
}

photonic::BellKind bell_kind_from_label(const std::string& label) {
    if (label == "phi+") return photonic::BellKind::PhiPlus;
    if (label == "phi-") return photonic::BellKind::PhiMinus;
    if (label == "psi+") return photonic::BellKind::PsiPlus;
    if (label == "psi-") return photonic::BellKind::PsiMinus;
    throw std::invalid_argument("unknown Bell state label: " + label);
}

json jones_to_json(const photonic::JonesVector& jv) {
    json j;
    j["h_re"] = jv.h.real();
    j["h_im"] = jv.h.imag();
    j["v_re"] = jv.v.real();
    j["v_im"] = jv.v.imag();
    return j;
}

// ---------------------------------------------------------------------------
// hom

struct HomOptions {
    double tau_max = 3.0;
    int tau_steps = 61;
    double coherence_time = 1.0;
    std::string model = "pair";
    double nbar = 0.1;
    int cutoff = 8;
    std::uint64_t seed = 0;
    std::shared_ptr<OutputOptions> out = std::make_shared<OutputOptions>();
};

void setup_hom(CLI::App& app) {
    auto opts = std::make_shared<HomOptions>();
    CLI::App* cmd = app.add_subcommand(
        "hom", "Two-photon interference dip: coincidence rate versus arrival delay");
    cmd->add_option("--tau-max", opts->tau_max, "Largest |delay| on the grid, in coherence times")
        ->capture_default_str();
    cmd->add_option("--tau-steps", opts->tau_steps, "Number of delay samples")
        ->capture_default_str();
    cmd->add_option("--coherence-time", opts->coherence_time, "Wave-packet coherence time")
        ->capture_default_str();
    cmd->add_option("--model", opts->model,
                    "Input pair: two single photons, or a photon against a coherent beam")
        ->check(CLI::IsMember({"pair", "coherent"}))
        ->capture_default_str();
    cmd->add_option("--nbar", opts->nbar, "Mean photon number of the coherent beam")
        ->capture_default_str();
    cmd->add_option("--cutoff", opts->cutoff, "Fock cutoff for the coherent model")
        ->capture_default_str();
    cmd->add_option("--seed", opts->seed, "Master seed (echoed; the curve is analytic)")
        ->capture_default_str();
    add_output_flags(cmd, opts->out, "csv");

    cmd->callback([opts] {
        photonic::HomInput kind = opts->model == "pair" ? photonic::HomInput::SinglePhotonPair
                                                        : photonic::HomInput::PhotonCoherent;
        std::vector<double> taus = symmetric_grid(opts->tau_max, opts->tau_steps);
        std::vector<std::vector<CsvCell>> rows;
        json curve = json::array();
        for (double tau : taus) {
            double c = photonic::hom_coincidence(tau, opts->coherence_time, kind, opts->nbar,
                                                 opts->cutoff);
            rows.push_back({CsvCell(tau), CsvCell(c)});
            json pt;
            pt["tau"] = tau;
            pt["coincidence"] = c;
            curve.push_back(pt);
        }

        json config;
        config["tau_max"] = opts->tau_max;
        config["tau_steps"] = opts->tau_steps;
        config["coherence_time"] = opts->coherence_time;
        config["model"] = opts->model;
        config["nbar"] = opts->nbar;
        config["cutoff"] = opts->cutoff;
        config["seed"] = opts->seed;

        json results;
        results["curve"] = curve;

        write_report(*opts->out, "hom", config, results,
                     photonic::csv_table({"tau", "coincidence"}, rows));
    });
}

// ---------------------------------------------------------------------------
// g2

struct G2Options {
    std::string source = "coherent";
    double nbar = 1.0;
    int n = 1;
    double r = 0.5;
    int cutoff = 40;
    double tau_max = 3.0;
    int tau_steps = 61;
    double coherence_time = 1.0;
    std::uint64_t seed = 0;
    std::shared_ptr<OutputOptions> out = std::make_shared<OutputOptions>();
};

void setup_g2(CLI::App& app) {
    auto opts = std::make_shared<G2Options>();
    CLI::App* cmd = app.add_subcommand(
        "g2", "Second-order coherence at zero delay plus the decay curve toward 1");
    cmd->add_option("--source", opts->source, "Light source")
        ->check(CLI::IsMember({"coherent", "thermal", "fock", "squeezed"}))
        ->capture_default_str();
    cmd->add_option("--nbar", opts->nbar, "Mean photon number (coherent and thermal)")
        ->capture_default_str();
    cmd->add_option("--n", opts->n, "Photon number of the Fock source")
        ->capture_default_str();
    cmd->add_option("--r", opts->r, "Squeezing parameter of the squeezed-vacuum source")
        ->capture_default_str();
    cmd->add_option("--cutoff", opts->cutoff, "Fock cutoff for the squeezed source")
        ->capture_default_str();
    cmd->add_option("--tau-max", opts->tau_max, "Largest delay on the curve, in coherence times")
        ->capture_default_str();
    cmd->add_option("--tau-steps", opts->tau_steps, "Number of delay samples")
        ->capture_default_str();
    cmd->add_option("--coherence-time", opts->coherence_time, "Source coherence time")
        ->capture_default_str();
    cmd->add_option("--seed", opts->seed, "Master seed (echoed; the statistics are exact)")
        ->capture_default_str();
    add_output_flags(cmd, opts->out, "json");

    cmd->callback([opts] {
        double g2_zero = 0.0;
        double truncation_loss = 0.0;
        if (opts->source == "coherent") {
            g2_zero = photonic::g2_zero(photonic::poisson_distribution(opts->nbar));
        } else if (opts->source == "thermal") {
            g2_zero = photonic::g2_zero(photonic::thermal_distribution(opts->nbar));
        } else if (opts->source == "fock") {
            g2_zero = photonic::g2_zero(photonic::fock_distribution(opts->n));
        } else {
            StateVector sv = photonic::squeezed_vacuum_state(opts->r, opts->cutoff);
            g2_zero = photonic::g2_zero(sv, 0);
            truncation_loss = sv.truncation_loss();
        }

        std::vector<double> taus = symmetric_grid(opts->tau_max, opts->tau_steps);
        auto curve = photonic::g2_curve(g2_zero, opts->coherence_time, taus);
        std::vector<std::vector<CsvCell>> rows;
        json curve_json = json::array();
        for (const auto& pt : curve) {
            rows.push_back({CsvCell(pt.tau), CsvCell(pt.value)});
            json p;
            p["tau"] = pt.tau;
            p["g2"] = pt.value;
            curve_json.push_back(p);
        }

        json config;
        config["source"] = opts->source;
        config["nbar"] = opts->nbar;
        config["n"] = opts->n;
        config["r"] = opts->r;
        config["cutoff"] = opts->cutoff;
        config["tau_max"] = opts->tau_max;
        config["tau_steps"] = opts->tau_steps;
        config["coherence_time"] = opts->coherence_time;
        config["seed"] = opts->seed;

        json results;
        results["g2_zero"] = g2_zero;
        results["curve"] = curve_json;
        if (opts->source == "squeezed") {
            results["truncation_loss"] = truncation_loss;
        }

        write_report(*opts->out, "g2", config, results,
                     photonic::csv_table({"tau", "g2"}, rows));
    });
}

// ---------------------------------------------------------------------------
// double-slit

struct DoubleSlitOptions {
    double slit_width = 40e-6;
    double separation = 250e-6;
    double distance = 1.0;
    double wavelength = 600e-9;
    double half_width = 3e-3;
    int bins = 50;
    long shots = 100000;
    std::uint64_t seed = 0;
    std::shared_ptr<OutputOptions> out = std::make_shared<OutputOptions>();
};

void setup_double_slit(CLI::App& app) {
    auto opts = std::make_shared<DoubleSlitOptions>();
    CLI::App* cmd = app.add_subcommand(
        "double-slit", "Single-photon interference histogram against the analytic pattern");
    cmd->add_option("--slit-width", opts->slit_width, "Slit width in meters")
        ->capture_default_str();
    cmd->add_option("--separation", opts->separation, "Slit separation in meters")
        ->capture_default_str();
    cmd->add_option("--distance", opts->distance, "Slit-to-screen distance in meters")
        ->capture_default_str();
    cmd->add_option("--wavelength", opts->wavelength, "Photon wavelength in meters")
        ->capture_default_str();
    cmd->add_option("--half-width", opts->half_width, "Half width of the observed screen region")
        ->capture_default_str();
    cmd->add_option("--bins", opts->bins, "Histogram bin count")->capture_default_str();
    cmd->add_option("--shots", opts->shots, "Number of photon detections to sample")
        ->capture_default_str();
    cmd->add_option("--seed", opts->seed, "Master seed")->capture_default_str();
    add_output_flags(cmd, opts->out, "json");

    cmd->callback([opts] {
        if (opts->bins < 1) {
            throw std::invalid_argument("double-slit: bins must be >= 1");
        }
        if (opts->shots < 0) {
            throw std::invalid_argument("double-slit: shots must be >= 0");
        }
        photonic::DoubleSlitGeometry geom{opts->slit_width, opts->separation, opts->distance,
                                          opts->wavelength};
        photonic::DoubleSlitSampler sampler(geom, opts->half_width);

        const int bins = opts->bins;
        const double hw = opts->half_width;
        const double bin_width = 2.0 * hw / bins;
        std::vector<long long> counts(static_cast<std::size_t>(bins), 0);
        SplitMix64 rng(photonic::derive_seed(opts->seed, 0));
        for (long k = 0; k < opts->shots; ++k) {
            double x = sampler.sample(rng);
            int idx = static_cast<int>((x + hw) / bin_width);
            idx = std::min(std::max(idx, 0), bins - 1);
            counts[static_cast<std::size_t>(idx)] += 1;
        }

        // Expected counts from the analytic intensity, Simpson-integrated per
        // bin and normalized over the observed window.
        auto bin_mass = [&](int j) {
            const int sub = 32;
            double a = -hw + j * bin_width;
            double h = bin_width / sub;
            double acc = photonic::double_slit_intensity(geom, a) +
                         photonic::double_slit_intensity(geom, a + bin_width);
            for (int i = 1; i < sub; ++i) {
                acc += (i % 2 == 1 ? 4.0 : 2.0) *
                       photonic::double_slit_intensity(geom, a + i * h);
            }
            return acc * h / 3.0;
        };
        std::vector<double> masses(static_cast<std::size_t>(bins), 0.0);
        double total_mass = 0.0;
        for (int j = 0; j < bins; ++j) {
            masses[static_cast<std::size_t>(j)] = bin_mass(j);
            total_mass += masses[static_cast<std::size_t>(j)];
        }

        std::vector<std::vector<CsvCell>> rows;
        json histogram = json::array();
        for (int j = 0; j < bins; ++j) {
            double center = -hw + (j + 0.5) * bin_width;
            double expected =
                static_cast<double>(opts->shots) * masses[static_cast<std::size_t>(j)] / total_mass;
            rows.push_back({CsvCell(center), CsvCell(counts[static_cast<std::size_t>(j)]),
                            CsvCell(expected)});
            json b;
            b["x"] = center;
            b["count"] = counts[static_cast<std::size_t>(j)];
            b["expected"] = expected;
            histogram.push_back(b);
        }

        json config;
        config["slit_width"] = opts->slit_width;
        config["separation"] = opts->separation;
        config["distance"] = opts->distance;
        config["wavelength"] = opts->wavelength;
        config["half_width"] = opts->half_width;
        config["bins"] = opts->bins;
        config["shots"] = opts->shots;
        config["seed"] = opts->seed;

        json results;
        results["histogram"] = histogram;

        write_report(*opts->out, "double-slit", config, results,
                     photonic::csv_table({"x", "count", "expected"}, rows));
    });
}

// ---------------------------------------------------------------------------
// bb84

struct Bb84Options {
    long pulses = 100000;
    std::string eve = "none";
    double length_km = 0.0;
    double attenuation_km = 10.0;
    double sample_fraction = 0.1;
    std::uint64_t seed = 0;
    std::shared_ptr<OutputOptions> out = std::make_shared<OutputOptions>();
};

void setup_bb84(CLI::App& app) {
    auto opts = std::make_shared<Bb84Options>();
    CLI::App* cmd = app.add_subcommand(
        "bb84", "Four-state key distribution over a lossy channel, with optional eavesdropper");
    cmd->add_option("--pulses", opts->pulses, "Number of transmitted pulses")
        ->capture_default_str();
    cmd->add_option("--eve", opts->eve, "Eavesdropper strategy")
        ->check(CLI::IsMember({"none", "intercept-resend"}))
        ->capture_default_str();
    cmd->add_option("--length-km", opts->length_km, "Channel length in km")
        ->capture_default_str();
    cmd->add_option("--attenuation-km", opts->attenuation_km,
                    "Channel attenuation length in km")
        ->capture_default_str();
    cmd->add_option("--sample-fraction", opts->sample_fraction,
                    "Fraction of sifted bits sacrificed to estimate the error rate")
        ->capture_default_str();
    cmd->add_option("--seed", opts->seed, "Master seed")->capture_default_str();
    add_output_flags(cmd, opts->out, "json");

    cmd->callback([opts] {
        photonic::Eavesdropper eve = opts->eve == "none"
                                         ? photonic::Eavesdropper::None
                                         : photonic::Eavesdropper::InterceptResend;
        photonic::ChannelModel channel(opts->length_km, opts->attenuation_km);
        photonic::KeyStats stats = photonic::bb84_run(opts->pulses, eve, channel,
                                                      opts->sample_fraction,
                                                      photonic::derive_seed(opts->seed, 0));

        json config;
        config["pulses"] = opts->pulses;
        config["eve"] = opts->eve;
        config["length_km"] = opts->length_km;
        config["attenuation_km"] = opts->attenuation_km;
        config["sample_fraction"] = opts->sample_fraction;
        config["seed"] = opts->seed;

        json results;
        results["pulses_sent"] = stats.pulses_sent;
        results["received"] = stats.received;
        results["transmission"] = channel.transmission();
        results["sifted_bits"] = stats.sifted_bits;
        results["sift_rate"] = stats.sift_rate;
        results["sampled_bits"] = stats.sampled_bits;
        results["sampled_qber"] = stats.sampled_qber;
        results["key_bits"] = static_cast<long long>(stats.final_key.size());

        write_report(*opts->out, "bb84", config, results,
                     kv_csv({{"pulses_sent", CsvCell(static_cast<long long>(stats.pulses_sent))},
                             {"received", CsvCell(static_cast<long long>(stats.received))},
                             {"transmission", CsvCell(channel.transmission())},
                             {"sifted_bits", CsvCell(static_cast<long long>(stats.sifted_bits))},
                             {"sift_rate", CsvCell(stats.sift_rate)},
                             {"sampled_bits", CsvCell(static_cast<long long>(stats.sampled_bits))},
                             {"sampled_qber", CsvCell(stats.sampled_qber)},
                             {"key_bits",
                              CsvCell(static_cast<long long>(stats.final_key.size()))}}));
    });
}

// ---------------------------------------------------------------------------
// teleport

struct TeleportOptions {
    long shots = 1000;
    std::string analyzer = "ideal";
    std::string resource = "phi+";
    std::uint64_t seed = 0;
    std::shared_ptr<OutputOptions> out = std::make_shared<OutputOptions>();
};

void setup_teleport(CLI::App& app) {
    auto opts = std::make_shared<TeleportOptions>();
    CLI::App* cmd = app.add_subcommand(
        "teleport", "Teleport random polarization qubits and check the corrected fidelity");
    cmd->add_option("--shots", opts->shots, "Number of random input states")
        ->capture_default_str();
    cmd->add_option("--analyzer", opts->analyzer, "Bell analyzer model")
        ->check(CLI::IsMember({"ideal", "linear-optical"}))
        ->capture_default_str();
    cmd->add_option("--resource", opts->resource, "Shared Bell pair")
        ->check(CLI::IsMember({"phi+", "phi-", "psi+", "psi-"}))
        ->capture_default_str();
    cmd->add_option("--seed", opts->seed, "Master seed")->capture_default_str();
    add_output_flags(cmd, opts->out, "json");

    cmd->callback([opts] {
        if (opts->shots < 1) {
            throw std::invalid_argument("teleport: shots must be >= 1");
        }
        photonic::BellAnalyzer analyzer = opts->analyzer == "ideal"
                                              ? photonic::BellAnalyzer::Ideal
                                              : photonic::BellAnalyzer::LinearOptical;
        photonic::BellKind resource = bell_kind_from_label(opts->resource);

        std::map<std::string, long long> histogram;
        long long corrected = 0;
        double fidelity_sum = 0.0;
        double fidelity_min = 1.0;
        // Run k draws its input from stream 2k and collapses via stream 2k+1.
        for (long k = 0; k < opts->shots; ++k) {
            SplitMix64 draw(photonic::derive_seed(opts->seed, 2 * static_cast<std::uint64_t>(k)));
            photonic::JonesVector input = random_jones(draw);
            photonic::TeleportOutcome outcome = photonic::teleport(
                input, resource, analyzer,
                photonic::derive_seed(opts->seed, 2 * static_cast<std::uint64_t>(k) + 1));
            histogram[outcome.bell_label] += 1;
            if (outcome.corrected_state.has_value()) {
                double f = photonic::qubit_fidelity(*outcome.corrected_state, Rail{0, 1}, input);
                corrected += 1;
                fidelity_sum += f;
                fidelity_min = std::min(fidelity_min, f);
            }
        }

        json config;
        config["shots"] = opts->shots;
        config["analyzer"] = opts->analyzer;
        config["resource"] = opts->resource;
        config["seed"] = opts->seed;

        json results;
        json hist;
        std::vector<std::pair<std::string, CsvCell>> metrics;
        metrics.push_back({"shots", CsvCell(static_cast<long long>(opts->shots))});
        for (const auto& [label, count] : histogram) {
            hist[label] = count;
            metrics.push_back({"count_" + label, CsvCell(count)});
        }
        results["histogram"] = hist;
        results["corrected"] = corrected;
        results["success_rate"] =
            static_cast<double>(corrected) / static_cast<double>(opts->shots);
        results["mean_fidelity"] = corrected > 0 ? fidelity_sum / corrected : 0.0;
        results["min_fidelity"] = corrected > 0 ? fidelity_min : 0.0;
        metrics.push_back({"corrected", CsvCell(corrected)});
        metrics.push_back({"success_rate", CsvCell(results["success_rate"].get<double>())});
        metrics.push_back({"mean_fidelity", CsvCell(results["mean_fidelity"].get<double>())});
        metrics.push_back({"min_fidelity", CsvCell(results["min_fidelity"].get<double>())});

        write_report(*opts->out, "teleport", config, results, kv_csv(metrics));
    });
}

// ---------------------------------------------------------------------------
// repeater

struct RepeaterOptions {
    double length = 4.0;
    int segments = 2;
    double attenuation_length = 1.0;
    double swap_success = 0.9;
    long slots = 100000;
    std::uint64_t seed = 0;
    std::shared_ptr<OutputOptions> out = std::make_shared<OutputOptions>();
};

void setup_repeater(CLI::App& app) {
    auto opts = std::make_shared<RepeaterOptions>();
    CLI::App* cmd = app.add_subcommand(
        "repeater", "Slotted entanglement-swapping chain versus direct transmission");
    cmd->add_option("--length", opts->length, "Total link length")->capture_default_str();
    cmd->add_option("--segments", opts->segments, "Number of repeater segments")
        ->capture_default_str();
    cmd->add_option("--attenuation-length", opts->attenuation_length,
                    "Channel attenuation length")
        ->capture_default_str();
    cmd->add_option("--swap-success", opts->swap_success, "Per-swap success probability")
        ->capture_default_str();
    cmd->add_option("--slots", opts->slots, "Number of time slots to simulate")
        ->capture_default_str();
    cmd->add_option("--seed", opts->seed, "Master seed")->capture_default_str();
    add_output_flags(cmd, opts->out, "json");

    cmd->callback([opts] {
        photonic::RepeaterResult res = photonic::repeater_rate(
            opts->length, opts->segments, opts->attenuation_length, opts->swap_success,
            photonic::derive_seed(opts->seed, 0), opts->slots);

        json config;
        config["length"] = opts->length;
        config["segments"] = opts->segments;
        config["attenuation_length"] = opts->attenuation_length;
        config["swap_success"] = opts->swap_success;
        config["slots"] = opts->slots;
        config["seed"] = opts->seed;

        json results;
        results["direct_rate"] = res.direct_rate;
        results["repeater_rate"] = res.repeater_rate;
        results["successes"] = res.successes;
        results["slots"] = res.slots;
        results["advantage"] = res.repeater_rate / res.direct_rate;

        write_report(*opts->out, "repeater", config, results,
                     kv_csv({{"direct_rate", CsvCell(res.direct_rate)},
                             {"repeater_rate", CsvCell(res.repeater_rate)},
                             {"successes", CsvCell(static_cast<long long>(res.successes))},
                             {"slots", CsvCell(static_cast<long long>(res.slots))},
                             {"advantage", CsvCell(res.repeater_rate / res.direct_rate)}}));
    });
}

// ---------------------------------------------------------------------------
// ns-gate

struct NsGateOptions {
    std::string input = "superposition";
    int cutoff = 2;
    std::uint64_t seed = 0;
    std::shared_ptr<OutputOptions> out = std::make_shared<OutputOptions>();
};

void setup_ns_gate(CLI::App& app) {
    auto opts = std::make_shared<NsGateOptions>();
    CLI::App* cmd = app.add_subcommand(
        "ns-gate", "Heralded nonlinear sign gate: solved angles, herald probability, output");
    cmd->add_option("--input", opts->input, "Single-mode input state")
        ->check(CLI::IsMember({"zero", "one", "two", "superposition", "random"}))
        ->capture_default_str();
    cmd->add_option("--cutoff", opts->cutoff, "Fock cutoff of the input mode (>= 2)")
        ->capture_default_str();
    cmd->add_option("--seed", opts->seed, "Master seed (used by the random input)")
        ->capture_default_str();
    add_output_flags(cmd, opts->out, "json");

    cmd->callback([opts] {
        if (opts->cutoff < 2) {
            throw std::invalid_argument("ns-gate: cutoff must be >= 2");
        }
        photonic::AmplitudeMap amps;
        if (opts->input == "zero") {
            amps[photonic::FockState({0})] = 1.0;
        } else if (opts->input == "one") {
            amps[photonic::FockState({1})] = 1.0;
        } else if (opts->input == "two") {
            amps[photonic::FockState({2})] = 1.0;
        } else if (opts->input == "superposition") {
            double s = 1.0 / std::sqrt(3.0);
            amps[photonic::FockState({0})] = s;
            amps[photonic::FockState({1})] = s;
            amps[photonic::FockState({2})] = s;
        } else {
            SplitMix64 rng(photonic::derive_seed(opts->seed, 0));
            double norm2 = 0.0;
            for (int n = 0; n <= 2; ++n) {
                complexd a(rng.next_normal(), rng.next_normal());
                amps[photonic::FockState({n})] = a;
                norm2 += std::norm(a);
            }
            for (auto& [fs, a] : amps) {
                a /= std::sqrt(norm2);
            }
        }
        StateVector input = StateVector::from_amplitudes(1, opts->cutoff, amps);

        const photonic::NsSolution& sol = photonic::ns_angles();
        photonic::HeraldedGateResult res = photonic::ns_gate(input);

        json config;
        config["input"] = opts->input;
        config["cutoff"] = opts->cutoff;
        config["seed"] = opts->seed;

        json results;
        json angles;
        angles["theta1"] = sol.theta1;
        angles["theta2"] = sol.theta2;
        angles["theta3"] = sol.theta3;
        results["angles"] = angles;
        results["amplitude"] = sol.amplitude;
        results["residual"] = sol.residual;
        results["success_probability"] = res.success_probability;
        results["input_state"] = photonic::state_to_json(input);
        if (res.output_state.has_value()) {
            results["output_state"] = photonic::state_to_json(*res.output_state);
        }

        write_report(*opts->out, "ns-gate", config, results,
                     kv_csv({{"theta1", CsvCell(sol.theta1)},
                             {"theta2", CsvCell(sol.theta2)},
                             {"theta3", CsvCell(sol.theta3)},
                             {"amplitude", CsvCell(sol.amplitude)},
                             {"residual", CsvCell(sol.residual)},
                             {"success_probability", CsvCell(res.success_probability)}}));
    });
}

// ---------------------------------------------------------------------------
// cz-gate

struct CzGateOptions {
    std::string input = "plus-plus";
    std::uint64_t seed = 0;
    std::shared_ptr<OutputOptions> out = std::make_shared<OutputOptions>();
};

void setup_cz_gate(CLI::App& app) {
    auto opts = std::make_shared<CzGateOptions>();
    CLI::App* cmd = app.add_subcommand(
        "cz-gate", "Heralded controlled-Z on two dual-rail qubits, checked against the ideal");
    cmd->add_option("--input", opts->input, "Two-qubit input state")
        ->check(CLI::IsMember({"hh", "hv", "vh", "vv", "plus-plus", "random"}))
        ->capture_default_str();
    cmd->add_option("--seed", opts->seed, "Master seed (used by the random input)")
        ->capture_default_str();
    add_output_flags(cmd, opts->out, "json");

    cmd->callback([opts] {
        Rail q1{0, 1};
        Rail q2{2, 3};
        photonic::PolarizationRegister reg({q1, q2});
        photonic::JonesVector a = photonic::jones_h();
        photonic::JonesVector b = photonic::jones_h();
        if (opts->input == "hv") {
            b = photonic::jones_v();
        } else if (opts->input == "vh") {
            a = photonic::jones_v();
        } else if (opts->input == "vv") {
            a = photonic::jones_v();
            b = photonic::jones_v();
        } else if (opts->input == "plus-plus") {
            a = photonic::jones_plus(0.0);
            b = photonic::jones_plus(0.0);
        } else if (opts->input == "random") {
            SplitMix64 rng(photonic::derive_seed(opts->seed, 0));
            a = random_jones(rng);
            b = random_jones(rng);
        }
        StateVector input = photonic::product_state(4, 2, reg, {a, b});

        photonic::HeraldedGateResult res = photonic::cz_gate(input, q1, q2);
        double fidelity = 0.0;
        if (res.output_state.has_value()) {
            StateVector ideal = photonic::apply_cz_ideal(input, q1, q2);
            fidelity = std::norm(photonic::inner_product(ideal, *res.output_state));
        }

        json config;
        config["input"] = opts->input;
        config["seed"] = opts->seed;

        json results;
        results["success_probability"] = res.success_probability;
        results["fidelity_vs_ideal"] = fidelity;
        results["input_state"] = photonic::state_to_json(input);
        if (res.output_state.has_value()) {
            results["output_state"] = photonic::state_to_json(*res.output_state);
        }

        write_report(*opts->out, "cz-gate", config, results,
                     kv_csv({{"success_probability", CsvCell(res.success_probability)},
                             {"fidelity_vs_ideal", CsvCell(fidelity)}}));
    });
}

// ---------------------------------------------------------------------------
// fusion

struct FusionOptions {
    int type = 1;
    std::uint64_t seed = 0;
    std::shared_ptr<OutputOptions> out = std::make_shared<OutputOptions>();
};

void setup_fusion(CLI::App& app) {
    auto opts = std::make_shared<FusionOptions>();
    CLI::App* cmd = app.add_subcommand(
        "fusion", "Fuse two Bell pairs and enumerate every detector branch");
    cmd->add_option("--type", opts->type, "Fusion type (1 keeps a rail, 2 consumes both)")
        ->check(CLI::IsMember({1, 2}))
        ->capture_default_str();
    cmd->add_option("--seed", opts->seed, "Master seed (echoed; branches are enumerated exactly)")
        ->capture_default_str();
    add_output_flags(cmd, opts->out, "json");

    cmd->callback([opts] {
        StateVector left =
            photonic::bell_state(4, 2, Rail{0, 1}, Rail{2, 3}, photonic::BellKind::PhiPlus);
        StateVector right =
            photonic::bell_state(4, 2, Rail{0, 1}, Rail{2, 3}, photonic::BellKind::PhiPlus);
        StateVector joint = photonic::tensor(left, right);
        Rail keep{2, 3};
        Rail drop{4, 5};

        json branches = json::array();
        std::vector<std::pair<std::string, CsvCell>> metrics;
        double total = 0.0;
        if (opts->type == 1) {
            for (photonic::Type1Outcome oc :
                 {photonic::Type1Outcome::Plus, photonic::Type1Outcome::Minus,
                  photonic::Type1Outcome::Fail}) {
                photonic::MeasurementRecord rec = photonic::fusion_type1(joint, keep, drop, oc);
                total += rec.probability;
                branches.push_back(photonic::record_to_json(rec));
                metrics.push_back({"p_" + rec.outcome, CsvCell(rec.probability)});
            }
        } else {
            for (photonic::Type2Outcome oc :
                 {photonic::Type2Outcome::SamePolarization,
                  photonic::Type2Outcome::CrossPolarization,
                  photonic::Type2Outcome::FailPsiMinus, photonic::Type2Outcome::FailPhiMinus}) {
                photonic::MeasurementRecord rec = photonic::fusion_type2(joint, keep, drop, oc);
                total += rec.probability;
                branches.push_back(photonic::record_to_json(rec));
                metrics.push_back({"p_" + rec.outcome, CsvCell(rec.probability)});
            }
        }
        metrics.push_back({"probability_sum", CsvCell(total)});

        json config;
        config["type"] = opts->type;
        config["seed"] = opts->seed;

        json results;
        results["branches"] = branches;
        results["probability_sum"] = total;

        write_report(*opts->out, "fusion", config, results, kv_csv(metrics));
    });
}

// ---------------------------------------------------------------------------
// cluster-mbqc

struct MbqcOptions {
    double alpha = 0.5;
    double beta = 0.8;
    double gamma = -0.4;
    std::uint64_t seed = 0;
    std::shared_ptr<OutputOptions> out = std::make_shared<OutputOptions>();
};

void setup_cluster_mbqc(CLI::App& app) {
    auto opts = std::make_shared<MbqcOptions>();
    CLI::App* cmd = app.add_subcommand(
        "cluster-mbqc", "Single-qubit rotation by measuring a four-photon cluster line");
    cmd->add_option("--alpha", opts->alpha, "First rotation angle")->capture_default_str();
    cmd->add_option("--beta", opts->beta, "Second rotation angle")->capture_default_str();
    cmd->add_option("--gamma", opts->gamma, "Third rotation angle")->capture_default_str();
    cmd->add_option("--seed", opts->seed, "Master seed (collapses the three measurements)")
        ->capture_default_str();
    add_output_flags(cmd, opts->out, "json");

    cmd->callback([opts] {
        photonic::GraphState line = photonic::build_cluster(4, {{0, 1}, {1, 2}, {2, 3}});
        json stabilizers = json::array();
        for (int v = 0; v < line.vertices; ++v) {
            stabilizers.push_back(photonic::stabilizer_expectation(line, v).real());
        }

        photonic::MbqcRecord rec = photonic::mbqc_single_qubit(
            opts->alpha, opts->beta, opts->gamma, photonic::derive_seed(opts->seed, 0));

        Eigen::Matrix2cd target_u =
            photonic::mbqc_target_unitary(opts->alpha, opts->beta, opts->gamma);
        Eigen::Vector2cd plus;
        plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
        Eigen::Vector2cd target = target_u * plus;
        complexd overlap = std::conj(target(0)) * rec.output_jones.h +
                           std::conj(target(1)) * rec.output_jones.v;
        double fidelity = std::norm(overlap);

        json config;
        config["alpha"] = opts->alpha;
        config["beta"] = opts->beta;
        config["gamma"] = opts->gamma;
        config["seed"] = opts->seed;

        json results;
        results["outcomes"] = rec.outcomes;
        results["angles_used"] = rec.angles_used;
        results["output_jones"] = jones_to_json(rec.output_jones);
        results["fidelity_vs_target"] = fidelity;
        results["stabilizers"] = stabilizers;

        write_report(*opts->out, "cluster-mbqc", config, results,
                     kv_csv({{"s1", CsvCell(static_cast<long long>(rec.outcomes[0]))},
                             {"s2", CsvCell(static_cast<long long>(rec.outcomes[1]))},
                             {"s3", CsvCell(static_cast<long long>(rec.outcomes[2]))},
                             {"angle1", CsvCell(rec.angles_used[0])},
                             {"angle2", CsvCell(rec.angles_used[1])},
                             {"angle3", CsvCell(rec.angles_used[2])},
                             {"fidelity_vs_target", CsvCell(fidelity)}}));
    });
}

// ---------------------------------------------------------------------------
// noon-scaling

struct NoonScalingOptions {
    std::string probe = "noon";
    int max_n = 8;
    double nbar_min = 1.0;
    double nbar_max = 16.0;
    double phi0 = std::numbers::pi / 3.0;
    int shots = 1024;
    int repeats = 256;
    std::uint64_t seed = 0;
    std::shared_ptr<OutputOptions> out = std::make_shared<OutputOptions>();
};

void setup_noon_scaling(CLI::App& app) {
    auto opts = std::make_shared<NoonScalingOptions>();
    CLI::App* cmd = app.add_subcommand(
        "noon-scaling", "Phase-precision scaling sweep with a log-log slope fit");
    cmd->add_option("--probe", opts->probe,
                    "Entangled probes (slope -1) or coherent baseline (slope -1/2)")
        ->check(CLI::IsMember({"noon", "coherent"}))
        ->capture_default_str();
    cmd->add_option("--max-n", opts->max_n, "Largest photon number (noon probe)")
        ->capture_default_str();
    cmd->add_option("--nbar-min", opts->nbar_min, "Smallest mean photon number (coherent probe)")
        ->capture_default_str();
    cmd->add_option("--nbar-max", opts->nbar_max,
                    "Largest mean photon number (coherent probe, doubling steps)")
        ->capture_default_str();
    cmd->add_option("--phi0", opts->phi0, "Reference phase for the sweep")
        ->capture_default_str();
    cmd->add_option("--shots", opts->shots, "Shots per estimate")->capture_default_str();
    cmd->add_option("--repeats", opts->repeats, "Independent estimates per sweep point")
        ->capture_default_str();
    cmd->add_option("--seed", opts->seed, "Master seed")->capture_default_str();
    add_output_flags(cmd, opts->out, "json");

    cmd->callback([opts] {
        std::vector<photonic::ScalingPoint> points;
        if (opts->probe == "noon") {
            if (opts->max_n < 1) {
                throw std::invalid_argument("noon-scaling: max-n must be >= 1");
            }
            std::vector<int> ns;
            for (int n = 1; n <= opts->max_n; ++n) {
                ns.push_back(n);
            }
            points = photonic::heisenberg_scaling_sweep(ns, opts->phi0, opts->shots,
                                                        opts->repeats,
                                                        photonic::derive_seed(opts->seed, 0));
        } else {
            if (opts->nbar_min <= 0.0 || opts->nbar_max < opts->nbar_min) {
                throw std::invalid_argument("noon-scaling: need 0 < nbar-min <= nbar-max");
            }
            std::vector<double> nbars;
            for (double nbar = opts->nbar_min; nbar <= opts->nbar_max * (1.0 + 1e-12);
                 nbar *= 2.0) {
                nbars.push_back(nbar);
            }
            points = photonic::shot_noise_scaling_sweep(nbars, opts->phi0, opts->shots,
                                                        opts->repeats,
                                                        photonic::derive_seed(opts->seed, 0));
        }
        photonic::LineFit fit = photonic::fit_loglog(points);

        std::vector<std::vector<CsvCell>> rows;
        json points_json = json::array();
        for (const auto& pt : points) {
            rows.push_back({CsvCell(pt.resource), CsvCell(pt.delta_phi), CsvCell(pt.std_error)});
            json p;
            p["resource"] = pt.resource;
            p["delta_phi"] = pt.delta_phi;
            p["stderr"] = pt.std_error;
            points_json.push_back(p);
        }

        json config;
        config["probe"] = opts->probe;
        if (opts->probe == "noon") {
            config["max_n"] = opts->max_n;
        } else {
            config["nbar_min"] = opts->nbar_min;
            config["nbar_max"] = opts->nbar_max;
        }
        config["phi0"] = opts->phi0;
        config["shots"] = opts->shots;
        config["repeats"] = opts->repeats;
        config["seed"] = opts->seed;

        json results;
        results["points"] = points_json;
        json fit_json;
        fit_json["slope"] = fit.slope;
        fit_json["intercept"] = fit.intercept;
        fit_json["r2"] = fit.r2;
        results["fit"] = fit_json;

        write_report(*opts->out, "noon-scaling", config, results,
                     photonic::csv_table({"resource", "delta_phi", "stderr"}, rows));
    });
}

// ---------------------------------------------------------------------------
// squeeze

struct SqueezeOptions {
    double r_max = 1.0;
    int r_steps = 5;
    int cutoff = 50;
    int shots = 1000;
    std::uint64_t seed = 0;
    std::shared_ptr<OutputOptions> out = std::make_shared<OutputOptions>();
};

void setup_squeeze(CLI::App& app) {
    auto opts = std::make_shared<SqueezeOptions>();
    CLI::App* cmd = app.add_subcommand(
        "squeeze", "Quadrature variances of squeezed vacuum and the precision bound");
    cmd->add_option("--r-max", opts->r_max, "Largest squeezing parameter")
        ->capture_default_str();
    cmd->add_option("--r-steps", opts->r_steps,
                    "Number of r values, evenly spaced from r-max/r-steps to r-max")
        ->capture_default_str();
    cmd->add_option("--cutoff", opts->cutoff, "Fock cutoff of the squeezed states")
        ->capture_default_str();
    cmd->add_option("--shots", opts->shots, "Shot budget entering the precision bound")
        ->capture_default_str();
    cmd->add_option("--seed", opts->seed, "Master seed (echoed; variances are exact)")
        ->capture_default_str();
    add_output_flags(cmd, opts->out, "json");

    cmd->callback([opts] {
        if (opts->r_steps < 1 || opts->r_max <= 0.0) {
            throw std::invalid_argument("squeeze: need r-max > 0 and r-steps >= 1");
        }
        std::vector<std::vector<CsvCell>> rows;
        json points = json::array();
        double max_loss = 0.0;
        for (int i = 1; i <= opts->r_steps; ++i) {
            double r = opts->r_max * static_cast<double>(i) / opts->r_steps;
            StateVector sv = photonic::squeezed_vacuum_state(r, opts->cutoff);
            double vx = photonic::quadrature_variance(sv, photonic::Quadrature::X);
            double vy = photonic::quadrature_variance(sv, photonic::Quadrature::Y);
            double nbar = photonic::mean_photon_number(sv, 0);
            double bound = photonic::squeezed_precision_bound(r, nbar, opts->shots);
            max_loss = std::max(max_loss, sv.truncation_loss());

            rows.push_back({CsvCell(r), CsvCell(vx), CsvCell(vy), CsvCell(vx * vy),
                            CsvCell(bound)});
            json p;
            p["r"] = r;
            p["var_x"] = vx;
            p["var_y"] = vy;
            p["product"] = vx * vy;
            p["nbar"] = nbar;
            p["bound"] = bound;
            points.push_back(p);
        }

        json config;
        config["r_max"] = opts->r_max;
        config["r_steps"] = opts->r_steps;
        config["cutoff"] = opts->cutoff;
        config["shots"] = opts->shots;
        config["seed"] = opts->seed;

        json results;
        results["points"] = points;
        results["truncation_loss_max"] = max_loss;

        write_report(*opts->out, "squeeze", config, results,
                     photonic::csv_table({"r", "var_x", "var_y", "product", "bound"}, rows));
    });
}

// ---------------------------------------------------------------------------
// micrometer

struct MicrometerOptions {
    double wavelength = 600e-9;
    double screen_length = 50e-3;
    double separation = 5e-6;
    double photons = 200000.0;
    std::uint64_t seed = 0;
    std::shared_ptr<OutputOptions> out = std::make_shared<OutputOptions>();
};

void setup_micrometer(CLI::App& app) {
    auto opts = std::make_shared<MicrometerOptions>();
    CLI::App* cmd = app.add_subcommand(
        "micrometer", "Estimate a micrometer-scale slit separation from its fringe pattern");
    cmd->add_option("--wavelength", opts->wavelength, "Illumination wavelength in meters")
        ->capture_default_str();
    cmd->add_option("--screen-length", opts->screen_length, "Observed screen length in meters")
        ->capture_default_str();
    cmd->add_option("--separation", opts->separation, "True slit separation in meters")
        ->capture_default_str();
    cmd->add_option("--photons", opts->photons,
                    "Photon budget split over batches (0 for the noiseless pattern)")
        ->capture_default_str();
    cmd->add_option("--seed", opts->seed, "Master seed")->capture_default_str();
    add_output_flags(cmd, opts->out, "json");

    cmd->callback([opts] {
        photonic::PrecisionEstimate est = photonic::micrometer_estimate(
            opts->wavelength, opts->screen_length, opts->separation, opts->photons,
            photonic::derive_seed(opts->seed, 0));

        json config;
        config["wavelength"] = opts->wavelength;
        config["screen_length"] = opts->screen_length;
        config["separation"] = opts->separation;
        config["photons"] = opts->photons;
        config["seed"] = opts->seed;

        json results;
        results["separation_true"] = opts->separation;
        results["estimate"] = est.estimate;
        results["std_error"] = est.std_error;
        results["relative_error"] = (est.estimate - opts->separation) / opts->separation;
        results["batches"] = est.shots;
        results["photons"] = est.resource;
        results["singular"] = est.singular;

        write_report(*opts->out, "micrometer", config, results,
                     kv_csv({{"separation_true", CsvCell(opts->separation)},
                             {"estimate", CsvCell(est.estimate)},
                             {"std_error", CsvCell(est.std_error)},
                             {"relative_error",
                              CsvCell((est.estimate - opts->separation) / opts->separation)},
                             {"batches", CsvCell(static_cast<long long>(est.shots))},
                             {"photons", CsvCell(est.resource)},
                             {"singular", CsvCell(static_cast<long long>(est.singular ? 1 : 0))}}));
    });
}

// ---------------------------------------------------------------------------
// list

struct ParamDoc {
    const char* flag;
    const char* fallback;
    const char* what;
};

struct CatalogEntry {
    const char* name;
    const char* summary;
    const char* ref;
    std::vector<ParamDoc> params;
};

const std::vector<CatalogEntry>& catalog() {
    static const std::vector<CatalogEntry> entries = {
        {"hom",
         "Two-photon interference dip: coincidence rate versus arrival delay",
         "README.md#interference-and-photon-statistics",
         {{"--tau-max", "3", "largest |delay| on the grid"},
          {"--tau-steps", "61", "number of delay samples"},
          {"--coherence-time", "1", "wave-packet coherence time"},
          {"--model", "pair", "pair | coherent"},
          {"--nbar", "0.1", "coherent beam mean photon number"},
          {"--cutoff", "8", "Fock cutoff for the coherent model"},
          {"--seed", "0", "master seed"}}},
        {"g2",
         "Second-order coherence at zero delay plus the decay curve toward 1",
         "README.md#interference-and-photon-statistics",
         {{"--source", "coherent", "coherent | thermal | fock | squeezed"},
          {"--nbar", "1", "mean photon number (coherent, thermal)"},
          {"--n", "1", "Fock source photon number"},
          {"--r", "0.5", "squeezing parameter"},
          {"--cutoff", "40", "Fock cutoff for the squeezed source"},
          {"--tau-max", "3", "largest delay on the curve"},
          {"--tau-steps", "61", "number of delay samples"},
          {"--coherence-time", "1", "source coherence time"},
          {"--seed", "0", "master seed"}}},
        {"double-slit",
         "Single-photon interference histogram against the analytic pattern",
         "README.md#interference-and-photon-statistics",
         {{"--slit-width", "4e-05", "slit width in meters"},
          {"--separation", "0.00025", "slit separation in meters"},
          {"--distance", "1", "slit-to-screen distance in meters"},
          {"--wavelength", "6e-07", "photon wavelength in meters"},
          {"--half-width", "0.003", "half width of the observed region"},
          {"--bins", "50", "histogram bin count"},
          {"--shots", "100000", "photon detections to sample"},
          {"--seed", "0", "master seed"}}},
        {"bb84",
         "Four-state key distribution over a lossy channel, with optional eavesdropper",
         "README.md#quantum-communication",
         {{"--pulses", "100000", "transmitted pulses"},
          {"--eve", "none", "none | intercept-resend"},
          {"--length-km", "0", "channel length in km"},
          {"--attenuation-km", "10", "attenuation length in km"},
          {"--sample-fraction", "0.1", "sifted bits sacrificed for error estimation"},
          {"--seed", "0", "master seed"}}},
        {"teleport",
         "Teleport random polarization qubits and check the corrected fidelity",
         "README.md#quantum-communication",
         {{"--shots", "1000", "number of random input states"},
          {"--analyzer", "ideal", "ideal | linear-optical"},
          {"--resource", "phi+", "shared Bell pair"},
          {"--seed", "0", "master seed"}}},
        {"repeater",
         "Slotted entanglement-swapping chain versus direct transmission",
         "README.md#quantum-communication",
         {{"--length", "4", "total link length"},
          {"--segments", "2", "repeater segments"},
          {"--attenuation-length", "1", "channel attenuation length"},
          {"--swap-success", "0.9", "per-swap success probability"},
          {"--slots", "100000", "time slots to simulate"},
          {"--seed", "0", "master seed"}}},
        {"ns-gate",
         "Heralded nonlinear sign gate: solved angles, herald probability, output",
         "README.md#linear-optical-computing",
         {{"--input", "superposition", "zero | one | two | superposition | random"},
          {"--cutoff", "2", "Fock cutoff of the input mode"},
          {"--seed", "0", "master seed"}}},
        {"cz-gate",
         "Heralded controlled-Z on two dual-rail qubits, checked against the ideal",
         "README.md#linear-optical-computing",
         {{"--input", "plus-plus", "hh | hv | vh | vv | plus-plus | random"},
          {"--seed", "0", "master seed"}}},
        {"fusion",
         "Fuse two Bell pairs and enumerate every detector branch",
         "README.md#linear-optical-computing",
         {{"--type", "1", "fusion type (1 or 2)"}, {"--seed", "0", "master seed"}}},
        {"cluster-mbqc",
         "Single-qubit rotation by measuring a four-photon cluster line",
         "README.md#linear-optical-computing",
         {{"--alpha", "0.5", "first rotation angle"},
          {"--beta", "0.8", "second rotation angle"},
          {"--gamma", "-0.4", "third rotation angle"},
          {"--seed", "0", "master seed"}}},
        {"noon-scaling",
         "Phase-precision scaling sweep with a log-log slope fit",
         "README.md#quantum-metrology",
         {{"--probe", "noon", "noon | coherent"},
          {"--max-n", "8", "largest photon number (noon)"},
          {"--nbar-min", "1", "smallest mean photon number (coherent)"},
          {"--nbar-max", "16", "largest mean photon number (coherent)"},
          {"--phi0", "1.0471975511965976", "reference phase"},
          {"--shots", "1024", "shots per estimate"},
          {"--repeats", "256", "estimates per sweep point"},
          {"--seed", "0", "master seed"}}},
        {"squeeze",
         "Quadrature variances of squeezed vacuum and the precision bound",
         "README.md#quantum-metrology",
         {{"--r-max", "1", "largest squeezing parameter"},
          {"--r-steps", "5", "number of r values"},
          {"--cutoff", "50", "Fock cutoff"},
          {"--shots", "1000", "shot budget in the precision bound"},
          {"--seed", "0", "master seed"}}},
        {"micrometer",
         "Estimate a micrometer-scale slit separation from its fringe pattern",
         "README.md#quantum-metrology",
         {{"--wavelength", "6e-07", "illumination wavelength in meters"},
          {"--screen-length", "0.05", "observed screen length in meters"},
          {"--separation", "5e-06", "true slit separation in meters"},
          {"--photons", "200000", "photon budget (0 for noiseless)"},
          {"--seed", "0", "master seed"}}},
    };
    return entries;
}

void setup_list(CLI::App& app) {
    CLI::App* cmd = app.add_subcommand(
        "list", "Print the experiment catalog with parameter schemas as JSON");
    cmd->callback([] {
        json out = json::array();
        for (const CatalogEntry& entry : catalog()) {
            json e;
            e["name"] = entry.name;
            e["summary"] = entry.summary;
            e["ref"] = entry.ref;
            json params = json::array();
            for (const ParamDoc& p : entry.params) {
                json pj;
                pj["flag"] = p.flag;
                pj["default"] = p.fallback;
                pj["description"] = p.what;
                params.push_back(pj);
            }
            e["params"] = params;
            out.push_back(e);
        }
        std::cout << out.dump(2) << "\n";
    });
}

}  // namespace

int main(int argc, char** argv) {
    auto start = std::chrono::steady_clock::now();

    CLI::App app{"Seeded linear-optics experiments with machine-readable reports"};
    app.require_subcommand(1);
    setup_hom(app);
    setup_g2(app);
    setup_double_slit(app);
    setup_bb84(app);
    setup_teleport(app);
    setup_repeater(app);
    setup_ns_gate(app);
    setup_cz_gate(app);
    setup_fusion(app);
    setup_cluster_mbqc(app);
    setup_noon_scaling(app);
    setup_squeeze(app);
    setup_micrometer(app);
    setup_list(app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                             start);
    std::cerr << "wall_ms=" << elapsed.count() << "\n";
    return 0;
}

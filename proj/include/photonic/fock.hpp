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
#include <complex>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace photonic {

using complexd = std::complex<double>;

// Truncated-Fock-space state machinery.
//
// A state lives on a fixed number of modes with a total-photon cutoff; the
// amplitude map is sparse over occupation vectors. States are value types and
// all operations are pure functions, so instances can be shared freely across
// threads. Amplitudes below kAmplitudeEpsilon are pruned after each
// operation. Operations that push weight past the cutoff (photon creation,
// truncated-state constructors) accumulate the squared norm of the dropped
// components in truncation_loss(), which rides along with the value.

inline constexpr double kAmplitudeEpsilon = 1e-14;

inline double factorial(int n) {
    static const std::vector<double> table = [] {
        std::vector<double> t(171);
        t[0] = 1.0;
        for (int i = 1; i <= 170; ++i) {
            t[i] = t[i - 1] * i;
        }
        return t;
    }();
    if (n < 0 || n > 170) {
        throw std::invalid_argument("factorial: argument out of range");
    }
    return table[static_cast<std::size_t>(n)];
}

// Occupation-number basis vector; occ[k] photons in mode k.
struct FockState {
    std::vector<int> occ;

    FockState() = default;
    explicit FockState(std::vector<int> occupations) : occ(std::move(occupations)) {
        for (int n : occ) {
            if (n < 0) {
                throw std::invalid_argument("FockState: negative occupation");
            }
        }
    }

    static FockState vacuum(int modes) {
        return FockState(std::vector<int>(static_cast<std::size_t>(modes), 0));
    }

    int modes() const { return static_cast<int>(occ.size()); }

    int total() const {
        int t = 0;
        for (int n : occ) {
            t += n;
        }
        return t;
    }

    bool operator==(const FockState& other) const { return occ == other.occ; }

    std::string str() const {
        std::string s = "|";
        for (std::size_t i = 0; i < occ.size(); ++i) {
            if (i) {
                s += ",";
            }
            s += std::to_string(occ[i]);
        }
        return s + ">";
    }
};

// Canonical basis order: lexicographically descending occupation vectors,
// e.g. for 2 modes and 2 photons: (2,0), (1,1), (0,2).
struct CanonicalOrder {
    bool operator()(const FockState& a, const FockState& b) const {
        return a.occ > b.occ;
    }
};

using AmplitudeMap = std::map<FockState, complexd, CanonicalOrder>;

inline std::uint64_t basis_dimension(int modes, int total) {
    if (modes < 1 || total < 0) {
        throw std::invalid_argument("basis_dimension: need modes >= 1, total >= 0");
    }
    // C(total + modes - 1, modes - 1) by stable integer recurrence.
    std::uint64_t result = 1;
    for (int i = 1; i <= modes - 1; ++i) {
        result = result * static_cast<std::uint64_t>(total + i) / static_cast<std::uint64_t>(i);
    }
    return result;
}

// All occupation vectors of `total` photons over `modes` modes, in canonical
// (lexicographically descending) order.
inline std::vector<FockState> enumerate_basis(int modes, int total) {
    if (modes < 1 || total < 0) {
        throw std::invalid_argument("enumerate_basis: need modes >= 1, total >= 0");
    }
    std::vector<FockState> out;
    out.reserve(basis_dimension(modes, total));
    std::vector<int> occ(static_cast<std::size_t>(modes), 0);
    auto recurse = [&](auto&& self, int mode, int remaining) -> void {
        if (mode == modes - 1) {
            occ[static_cast<std::size_t>(mode)] = remaining;
            out.push_back(FockState(occ));
            return;
        }
        for (int n = remaining; n >= 0; --n) {
            occ[static_cast<std::size_t>(mode)] = n;
            self(self, mode + 1, remaining - n);
        }
    };
    recurse(recurse, 0, total);
    return out;
}

class StateVector {
  public:
    StateVector(int mode_count, int cutoff)
        : mode_count_(mode_count), cutoff_(cutoff) {
        if (mode_count < 1) {
            throw std::invalid_argument("StateVector: mode_count must be >= 1");
        }
        if (cutoff < 0) {
            throw std::invalid_argument("StateVector: cutoff must be >= 0");
        }
    }

    static StateVector vacuum(int mode_count, int cutoff) {
        StateVector sv(mode_count, cutoff);
        sv.amps_[FockState::vacuum(mode_count)] = 1.0;
        return sv;
    }

    static StateVector basis_state(int cutoff, const FockState& fs) {
        StateVector sv(fs.modes(), cutoff);
        if (fs.total() > cutoff) {
            throw std::invalid_argument("basis_state: occupation exceeds cutoff");
        }
        sv.amps_[fs] = 1.0;
        return sv;
    }

    static StateVector from_amplitudes(int mode_count, int cutoff, AmplitudeMap amps) {
        StateVector sv(mode_count, cutoff);
        for (const auto& [fs, amp] : amps) {
            if (fs.modes() != mode_count) {
                throw std::invalid_argument("from_amplitudes: mode count mismatch");
            }
            if (fs.total() > cutoff) {
                throw std::invalid_argument("from_amplitudes: component exceeds cutoff");
            }
        }
        sv.amps_ = std::move(amps);
        sv.prune();
        return sv;
    }

    int mode_count() const { return mode_count_; }
    int cutoff() const { return cutoff_; }
    const AmplitudeMap& amplitudes() const { return amps_; }
    double truncation_loss() const { return truncation_loss_; }

    complexd amplitude(const FockState& fs) const {
        auto it = amps_.find(fs);
        return it == amps_.end() ? complexd(0.0) : it->second;
    }

    double squared_norm() const {
        double s = 0.0;
        for (const auto& [fs, amp] : amps_) {
            s += std::norm(amp);
        }
        return s;
    }

    double norm() const { return std::sqrt(squared_norm()); }

    StateVector normalized() const {
        double n = norm();
        if (n <= 0.0) {
            throw std::runtime_error("normalized: zero-norm state");
        }
        return scaled(1.0 / n);
    }

    StateVector scaled(complexd factor) const {
        StateVector out = *this;
        for (auto& [fs, amp] : out.amps_) {
            amp *= factor;
        }
        out.prune();
        return out;
    }

    // Mutating accumulation; internal building block for the operations
    // defined below, which all present a pure-function interface.
    void accumulate(const FockState& fs, complexd amp) {
        amps_[fs] += amp;
    }

    void add_truncation_loss(double loss) { truncation_loss_ += loss; }

    void prune() {
        for (auto it = amps_.begin(); it != amps_.end();) {
            if (std::abs(it->second) < kAmplitudeEpsilon) {
                it = amps_.erase(it);
            } else {
                ++it;
            }
        }
    }

  private:
    int mode_count_;
    int cutoff_;
    AmplitudeMap amps_;
    double truncation_loss_ = 0.0;
};

inline void check_mode(const StateVector& sv, int mode, const char* op) {
    if (mode < 0 || mode >= sv.mode_count()) {
        throw std::invalid_argument(std::string(op) + ": mode index out of range");
    }
}

// a† on one mode: sqrt(n+1) |n+1>. Components that would exceed the cutoff
// are dropped and their squared norm is added to truncation_loss().
inline StateVector apply_creation(const StateVector& sv, int mode) {
    check_mode(sv, mode, "apply_creation");
    StateVector out(sv.mode_count(), sv.cutoff());
    out.add_truncation_loss(sv.truncation_loss());
    for (const auto& [fs, amp] : sv.amplitudes()) {
        int n = fs.occ[static_cast<std::size_t>(mode)];
        if (fs.total() + 1 > sv.cutoff()) {
            out.add_truncation_loss(std::norm(amp) * (n + 1));
            continue;
        }
        FockState up = fs;
        up.occ[static_cast<std::size_t>(mode)] = n + 1;
        out.accumulate(up, amp * std::sqrt(static_cast<double>(n + 1)));
    }
    out.prune();
    return out;
}

// a on one mode: sqrt(n) |n-1>; vacuum components are annihilated.
inline StateVector apply_annihilation(const StateVector& sv, int mode) {
    check_mode(sv, mode, "apply_annihilation");
    StateVector out(sv.mode_count(), sv.cutoff());
    out.add_truncation_loss(sv.truncation_loss());
    for (const auto& [fs, amp] : sv.amplitudes()) {
        int n = fs.occ[static_cast<std::size_t>(mode)];
        if (n == 0) {
            continue;
        }
        FockState down = fs;
        down.occ[static_cast<std::size_t>(mode)] = n - 1;
        out.accumulate(down, amp * std::sqrt(static_cast<double>(n)));
    }
    out.prune();
    return out;
}

inline complexd inner_product(const StateVector& a, const StateVector& b) {
    if (a.mode_count() != b.mode_count()) {
        throw std::invalid_argument("inner_product: mode count mismatch");
    }
    // Iterate the smaller support.
    const StateVector& small = a.amplitudes().size() <= b.amplitudes().size() ? a : b;
    const StateVector& large = &small == &a ? b : a;
    complexd s = 0.0;
    for (const auto& [fs, amp] : small.amplitudes()) {
        complexd other = large.amplitude(fs);
        if (&small == &a) {
            s += std::conj(amp) * other;
        } else {
            s += std::conj(other) * amp;
        }
    }
    return s;
}

// Tensor product; modes of `b` are appended after the modes of `a`.
inline StateVector tensor(const StateVector& a, const StateVector& b) {
    StateVector out(a.mode_count() + b.mode_count(), a.cutoff() + b.cutoff());
    out.add_truncation_loss(a.truncation_loss() + b.truncation_loss());
    for (const auto& [fa, xa] : a.amplitudes()) {
        for (const auto& [fb, xb] : b.amplitudes()) {
            FockState joint = fa;
            joint.occ.insert(joint.occ.end(), fb.occ.begin(), fb.occ.end());
            out.accumulate(joint, xa * xb);
        }
    }
    out.prune();
    return out;
}

inline double mean_photon_number(const StateVector& sv, int mode) {
    check_mode(sv, mode, "mean_photon_number");
    double num = 0.0;
    for (const auto& [fs, amp] : sv.amplitudes()) {
        num += fs.occ[static_cast<std::size_t>(mode)] * std::norm(amp);
    }
    double den = sv.squared_norm();
    if (den <= 0.0) {
        throw std::runtime_error("mean_photon_number: zero-norm state");
    }
    return num / den;
}

// --- single-mode constructors -------------------------------------------

inline StateVector fock_state(int n, int cutoff) {
    return StateVector::basis_state(cutoff, FockState({n}));
}

// Coherent state truncated at the cutoff. The state is NOT renormalized; the
// missing tail weight is reported through truncation_loss().
inline StateVector coherent_state(complexd alpha, int cutoff) {
    StateVector sv(1, cutoff);
    double kept = 0.0;
    complexd prefactor = std::exp(-0.5 * std::norm(alpha));
    complexd power = 1.0;
    for (int n = 0; n <= cutoff; ++n) {
        if (n > 0) {
            power *= alpha / std::sqrt(static_cast<double>(n));
        }
        complexd c = prefactor * power;
        sv.accumulate(FockState({n}), c);
        kept += std::norm(c);
    }
    sv.add_truncation_loss(std::max(0.0, 1.0 - kept));
    sv.prune();
    return sv;
}

// Squeezed vacuum truncated at the cutoff (even components only):
//   c_{2k} = (-tanh r)^k sqrt((2k)!) / (2^k k!) / sqrt(cosh r).
// Positive r squeezes the X quadrature. Not renormalized; tail weight is
// reported through truncation_loss().
inline StateVector squeezed_vacuum_state(double r, int cutoff) {
    StateVector sv(1, cutoff);
    double kept = 0.0;
    double t = -std::tanh(r);
    double c = 1.0 / std::sqrt(std::cosh(r));
    for (int k = 0; 2 * k <= cutoff; ++k) {
        if (k > 0) {
            c *= t * std::sqrt((2.0 * k - 1.0) * (2.0 * k)) / (2.0 * k);
        }
        sv.accumulate(FockState({2 * k}), c);
        kept += c * c;
    }
    sv.add_truncation_loss(std::max(0.0, 1.0 - kept));
    sv.prune();
    return sv;
}

}  // namespace photonic

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
#include <bit>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "photonic/fock.hpp"
#include "photonic/rng.hpp"

namespace photonic {

// An m x m mode unitary U maps input creation operators to output ones by
// columns: a†_j -> sum_i U(i,j) b†_i. Composing circuits therefore multiplies
// matrices on the left: applying U then V realizes V * U.

inline constexpr double kUnitaryTolerance = 1e-10;

class ModeUnitary {
  public:
    explicit ModeUnitary(Eigen::MatrixXcd matrix) : m_(std::move(matrix)) {
        if (m_.rows() != m_.cols() || m_.rows() < 1) {
            throw std::invalid_argument("ModeUnitary: matrix must be square");
        }
        Eigen::MatrixXcd gram = m_.adjoint() * m_;
        double deviation =
            (gram - Eigen::MatrixXcd::Identity(m_.rows(), m_.cols())).cwiseAbs().maxCoeff();
        if (deviation > kUnitaryTolerance) {
            throw std::invalid_argument("ModeUnitary: matrix is not unitary (deviation " +
                                        std::to_string(deviation) + ")");
        }
    }

    static ModeUnitary identity(int dim) {
        return ModeUnitary(Eigen::MatrixXcd::Identity(dim, dim));
    }

    int dim() const { return static_cast<int>(m_.rows()); }
    const Eigen::MatrixXcd& matrix() const { return m_; }
    complexd operator()(int i, int j) const { return m_(i, j); }

    ModeUnitary adjoint() const { return ModeUnitary(m_.adjoint()); }

    // this applied after other.
    ModeUnitary compose_after(const ModeUnitary& other) const {
        if (dim() != other.dim()) {
            throw std::invalid_argument("compose_after: dimension mismatch");
        }
        return ModeUnitary(m_ * other.m_);
    }

  private:
    Eigen::MatrixXcd m_;
};

// Matrix permanent by Ryser's formula with Gray-code updates, O(2^n n).
inline complexd permanent(const Eigen::MatrixXcd& m) {
    if (m.rows() != m.cols()) {
        throw std::invalid_argument("permanent: matrix must be square");
    }
    int n = static_cast<int>(m.rows());
    if (n == 0) {
        return 1.0;
    }
    if (n > 20) {
        throw std::invalid_argument("permanent: dimension too large");
    }
    std::vector<complexd> row_sum(static_cast<std::size_t>(n), complexd(0.0));
    complexd total = 0.0;
    std::uint64_t gray = 0;
    std::uint64_t limit = std::uint64_t(1) << n;
    for (std::uint64_t k = 1; k < limit; ++k) {
        std::uint64_t next_gray = k ^ (k >> 1);
        std::uint64_t changed = next_gray ^ gray;
        int j = std::countr_zero(changed);
        bool added = next_gray & changed;
        for (int i = 0; i < n; ++i) {
            row_sum[static_cast<std::size_t>(i)] += (added ? 1.0 : -1.0) * m(i, j);
        }
        complexd prod = 1.0;
        for (int i = 0; i < n; ++i) {
            prod *= row_sum[static_cast<std::size_t>(i)];
        }
        // term sign is (-1)^{n - |S|} with |S| = popcount of the subset word
        double term_sign = ((n - std::popcount(next_gray)) % 2 == 0) ? 1.0 : -1.0;
        total += term_sign * prod;
        gray = next_gray;
    }
    return total;
}

// <out| applied-U |in> for photon-number-conserving transitions, evaluated by
// the permanent of the row/column-expanded submatrix:
//   amp = per(U[out-rows, in-cols]) / sqrt(prod in_j! prod out_i!).
// This is the exact (exponential-cost) reference path; practical up to at
// least 6 photons and cross-checked against element-wise application.
inline complexd transition_amplitude(const ModeUnitary& u, const FockState& in,
                                     const FockState& out) {
    if (in.modes() != u.dim() || out.modes() != u.dim()) {
        throw std::invalid_argument("transition_amplitude: mode count mismatch");
    }
    if (in.total() != out.total()) {
        return 0.0;
    }
    int n = in.total();
    if (n == 0) {
        return 1.0;
    }
    Eigen::MatrixXcd expanded(n, n);
    std::vector<int> cols;
    cols.reserve(static_cast<std::size_t>(n));
    for (int j = 0; j < u.dim(); ++j) {
        for (int r = 0; r < in.occ[static_cast<std::size_t>(j)]; ++r) {
            cols.push_back(j);
        }
    }
    int row = 0;
    for (int i = 0; i < u.dim(); ++i) {
        for (int r = 0; r < out.occ[static_cast<std::size_t>(i)]; ++r) {
            for (int c = 0; c < n; ++c) {
                expanded(row, c) = u(i, cols[static_cast<std::size_t>(c)]);
            }
            ++row;
        }
    }
    double normalization = 1.0;
    for (int j = 0; j < u.dim(); ++j) {
        normalization *= factorial(in.occ[static_cast<std::size_t>(j)]);
        normalization *= factorial(out.occ[static_cast<std::size_t>(j)]);
    }
    return permanent(expanded) / std::sqrt(normalization);
}

// Full multi-mode unitary action on a state via permanents. Exponential in
// the photon number; serves as the oracle against which the element-wise
// fast path is verified.
inline StateVector apply_mode_unitary(const StateVector& sv, const ModeUnitary& u) {
    if (sv.mode_count() != u.dim()) {
        throw std::invalid_argument("apply_mode_unitary: mode count mismatch");
    }
    StateVector out(sv.mode_count(), sv.cutoff());
    out.add_truncation_loss(sv.truncation_loss());
    // Group input components by total photon number; the unitary conserves it.
    std::map<int, std::vector<const std::pair<const FockState, complexd>*>> by_total;
    for (const auto& entry : sv.amplitudes()) {
        by_total[entry.first.total()].push_back(&entry);
    }
    for (const auto& [total, entries] : by_total) {
        for (const FockState& target : enumerate_basis(sv.mode_count(), total)) {
            complexd acc = 0.0;
            for (const auto* entry : entries) {
                acc += entry->second * transition_amplitude(u, entry->first, target);
            }
            if (std::abs(acc) >= kAmplitudeEpsilon) {
                out.accumulate(target, acc);
            }
        }
    }
    out.prune();
    return out;
}

// Haar-distributed random unitary: QR of a complex Ginibre matrix with the
// R-diagonal phase fix.
inline ModeUnitary haar_unitary(int dim, SplitMix64& rng) {
    Eigen::MatrixXcd g(dim, dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            g(i, j) = complexd(rng.next_normal(), rng.next_normal());
        }
    }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    Eigen::MatrixXcd q = qr.householderQ();
    Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < dim; ++j) {
        complexd d = r(j, j);
        complexd phase = std::abs(d) > 0 ? d / std::abs(d) : complexd(1.0);
        q.col(j) *= phase;
    }
    return ModeUnitary(q);
}

}  // namespace photonic

// Copyright 2026 The Squash Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SQUASH_KEYRATES_H
#define SQUASH_KEYRATES_H

#include <array>
#include <span>

namespace squash {

/// Asymptotic test-bit observation shared by every basis: erroneous
/// single-click rate eps and double-click rate delta.
struct ObservedRates {
    double eps = 0.0;
    double delta = 0.0;

    /// Throws DomainError unless eps, delta >= 0 and eps + delta <= 1.
    void validate() const;
};

/// Whether a key-rate formula clips negative values to zero.
enum class Floor { kZero, kNone };

/// Base-2 binary entropy with h2(0) = h2(1) = 0.
double binary_entropy(double x);

/// -sum p log2 p with 0 log 0 = 0. Entries must be >= 0 and sum to <= 1 + 1e-10.
double shannon_entropy(std::span<const double> probs);

/// Bell-diagonal weights (b0, b1, b2, b3) minimizing the six-state rate.
struct SixStateSolution {
    std::array<double, 4> b{};
    double e_z = 0.0;  // b1 + b2
    double e_x = 0.0;  // b2 + b3
    double e_y = 0.0;  // b1 + b3
    double raw_rate = 0.0;  // (1 - delta)(1 - h(b)), may be negative
    double rate = 0.0;      // raw_rate floored at 0
    /// All b_i >= 0 and (e_x, e_y) inside the box allowed by the key-bit bounds.
    bool feasible = false;
};

/// Key-bit error-rate box for the non-key bases: [(eps - delta)/(1 - delta),
/// (eps + delta)/(1 - delta)] clamped to [0, 1].
std::array<double, 2> sixstate_phase_error_box(const ObservedRates& obs);

/// Worst-case six-state rate per detected signal with one-way reconciliation,
/// found by grid search over (e_x, e_y) refined to the given box width.
/// Throws InfeasibleError if no grid point gives nonnegative b.
SixStateSolution sixstate_rate_numeric(const ObservedRates& obs, double resolution = 1e-6);

/// Closed-form b2 = (eps - 2 delta)/(2(1 - delta)), b1 = eps/(1-delta) - b2,
/// b3 = (eps + delta)/(1 - delta) - b2. Throws PreconditionError when
/// b2 < e_z * e_x^U or some b_i < 0; use sixstate_rate_numeric there.
SixStateSolution sixstate_rate_closedform(const ObservedRates& obs);

/// BB84 with double-click key bits discarded:
/// (1 - delta)[1 - h2(eps/(1-delta)) - h2((eps+delta)/(1-delta))].
double bb84_rate_discard(const ObservedRates& obs, Floor floor = Floor::kZero);

/// BB84 with double clicks assigned a random bit: 1 - 2 h2(eps + delta/2).
double bb84_rate_random_assign(const ObservedRates& obs, Floor floor = Floor::kZero);

/// Statistics-preserving squash with double-click key bits discarded:
/// (1 - delta)[1 - h2(eps/(1-delta)) - h2((eps+delta/2)/(1-delta))].
double bb84_rate_statpreserve_discard(const ObservedRates& obs, Floor floor = Floor::kZero);

}  // namespace squash

#endif

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

#ifndef SQUASH_STATBOUNDS_H
#define SQUASH_STATBOUNDS_H

#include <array>

#include <Eigen/Dense>

namespace squash {

// Counts are doubles so that expected (asymptotic) tallies can be fed in
// as well as integer event counts.

/// Test-bit events in one basis.
struct EventTally {
    double correct_single = 0.0;
    double error_single = 0.0;
    double double_click = 0.0;
    double total() const { return correct_single + error_single + double_click; }
};

/// Events for a +-1 valued observable (Stokes parameter or CHSH product).
struct SignedTally {
    double plus_single = 0.0;
    double minus_single = 0.0;
    double double_click = 0.0;
    double total() const { return plus_single + minus_single + double_click; }
};

/// Key bits measured in the key basis b*.
struct KeyTally {
    double single = 0.0;
    double double_click = 0.0;
    double total() const { return single + double_click; }
};

struct RateInterval {
    double lo = 0.0;
    double hi = 0.0;
    double width() const { return hi - lo; }
    bool contains(double x, double tol = 0.0) const { return x >= lo - tol && x <= hi + tol; }
};

/// Clamped key-error interval with the unclamped values kept.
struct KeyErrorBounds {
    RateInterval bounds;
    double raw_lo = 0.0;
    double raw_hi = 0.0;
    bool lo_clamped = false;
    bool hi_clamped = false;
};

/// rho = I/2 + sum_W t_W W / 2 with t_W in the given intervals (X, Y, Z order).
struct TomographyStateSet {
    Eigen::Matrix2cd center;
    std::array<RateInterval, 3> stokes;
    /// Whether some Bloch vector in the box has norm <= 1.
    bool intersects_state_space = false;
    /// Norm of the box point closest to the origin.
    double min_bloch_norm = 0.0;
};

/// e_b in [N^{s,e} / N_b, (N^{s,e} + N^d) / N_b].
RateInterval test_error_bounds(const EventTally& tally);

/// Error-rate bounds in a basis b != b* for key bits left after discarding
/// the b*-basis double clicks, clamped to [0, 1].
KeyErrorBounds key_error_bounds_other_basis(const RateInterval& test_interval, const KeyTally& key);

/// Key-basis error rate with double clicks excluded.
double key_error_same_basis(const EventTally& tally);

/// Interval for Tr(rho W) from a threshold-detector tally in basis W.
RateInterval stokes_bounds(const SignedTally& tally);

TomographyStateSet tomography_state_set(const std::array<RateInterval, 3>& stokes);

/// Interval for E[A_i B_j]. A trial is a double click when either side
/// double-clicked.
RateInterval chsh_correlator_bounds(const SignedTally& tally);

/// chi = E11 + E12 + E21 - E22, interval on [-4, 4].
RateInterval chsh_violation_bounds(const RateInterval& e11, const RateInterval& e12, const RateInterval& e21,
                                   const RateInterval& e22);

/// F >= (1 + sqrt((chi/2)^2 - 1)) / 2 for chi >= 2, and the vacuous 1/2 below.
/// Throws DomainError when chi exceeds 2 sqrt 2 by more than 1e-9.
double fidelity_lower_bound(double chi_obs);

}  // namespace squash

#endif

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

#include "squash/statbounds.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "squash/detection.h"
#include "squash/errors.h"

namespace squash {

namespace {

void check_counts(double a, double b, double c, const char* what) {
    if (!(a >= 0.0) || !(b >= 0.0) || !(c >= 0.0) || !std::isfinite(a + b + c)) {
        throw DomainError(std::string(what) + ": counts must be finite and nonnegative");
    }
}

RateInterval signed_bounds(const SignedTally& t, const char* what) {
    check_counts(t.plus_single, t.minus_single, t.double_click, what);
    const double n = t.total();
    if (!(n > 0.0)) {
        throw DomainError(std::string(what) + ": empty tally");
    }
    const double diff = t.plus_single - t.minus_single;
    return RateInterval{std::max(-1.0, (diff - t.double_click) / n), std::min(1.0, (diff + t.double_click) / n)};
}

}  // namespace

RateInterval test_error_bounds(const EventTally& tally) {
    check_counts(tally.correct_single, tally.error_single, tally.double_click, "test_error_bounds");
    const double n = tally.total();
    if (!(n > 0.0)) {
        throw DomainError("test_error_bounds: empty tally");
    }
    return RateInterval{tally.error_single / n, (tally.error_single + tally.double_click) / n};
}

KeyErrorBounds key_error_bounds_other_basis(const RateInterval& test_interval, const KeyTally& key) {
    check_counts(key.single, key.double_click, 0.0, "key_error_bounds_other_basis");
    if (!(key.single > 0.0)) {
        throw DomainError("key_error_bounds_other_basis: no single-click key bits");
    }
    const double n_key = key.total();
    KeyErrorBounds out;
    out.raw_lo = (test_interval.lo * n_key - key.double_click) / key.single;
    out.raw_hi = test_interval.hi * n_key / key.single;
    out.lo_clamped = out.raw_lo < 0.0;
    out.hi_clamped = out.raw_hi > 1.0;
    out.bounds.lo = std::clamp(out.raw_lo, 0.0, 1.0);
    out.bounds.hi = std::clamp(out.raw_hi, 0.0, 1.0);
    return out;
}

double key_error_same_basis(const EventTally& tally) {
    check_counts(tally.correct_single, tally.error_single, tally.double_click, "key_error_same_basis");
    const double singles = tally.correct_single + tally.error_single;
    if (!(singles > 0.0)) {
        throw DomainError("key_error_same_basis: no single-click events");
    }
    return tally.error_single / singles;
}

RateInterval stokes_bounds(const SignedTally& tally) { return signed_bounds(tally, "stokes_bounds"); }

TomographyStateSet tomography_state_set(const std::array<RateInterval, 3>& stokes) {
    constexpr std::array<PauliBasis, 3> kAxes = {PauliBasis::X, PauliBasis::Y, PauliBasis::Z};
    TomographyStateSet out;
    out.stokes = stokes;
    out.center = 0.5 * Eigen::Matrix2cd::Identity();
    double norm2 = 0.0;
    for (int a = 0; a < 3; ++a) {
        const RateInterval& r = stokes[a];
        if (!(r.lo <= r.hi) || r.lo < -1.0 || r.hi > 1.0) {
            throw DomainError("tomography_state_set: each interval must satisfy -1 <= lo <= hi <= 1");
        }
        out.center += 0.25 * (r.lo + r.hi) * pauli(kAxes[a]);
        // The box point nearest the origin clamps 0 into each interval.
        const double nearest = std::clamp(0.0, r.lo, r.hi);
        norm2 += nearest * nearest;
    }
    out.min_bloch_norm = std::sqrt(norm2);
    out.intersects_state_space = out.min_bloch_norm <= 1.0 + 1e-12;
    return out;
}

RateInterval chsh_correlator_bounds(const SignedTally& tally) { return signed_bounds(tally, "chsh_correlator_bounds"); }

RateInterval chsh_violation_bounds(const RateInterval& e11, const RateInterval& e12, const RateInterval& e21,
                                   const RateInterval& e22) {
    for (const RateInterval* e : {&e11, &e12, &e21, &e22}) {
        if (!(e->lo <= e->hi)) {
            throw DomainError("chsh_violation_bounds: interval with lo > hi");
        }
    }
    return RateInterval{e11.lo + e12.lo + e21.lo - e22.hi, e11.hi + e12.hi + e21.hi - e22.lo};
}

double fidelity_lower_bound(double chi_obs) {
    constexpr double kTsirelson = 2.0 * std::numbers::sqrt2;
    if (!std::isfinite(chi_obs) || chi_obs > kTsirelson + 1e-9) {
        throw DomainError("fidelity_lower_bound: chi exceeds the quantum maximum 2 sqrt 2");
    }
    if (chi_obs < 2.0) {
        return 0.5;
    }
    const double half = chi_obs / 2.0;
    const double root = std::sqrt(std::min(1.0, half * half - 1.0));
    return (1.0 + root) / 2.0;
}

}  // namespace squash

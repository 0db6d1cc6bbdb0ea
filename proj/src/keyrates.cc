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

#include "squash/keyrates.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "squash/errors.h"

namespace squash {

namespace {

constexpr double kSumTol = 1e-10;
constexpr double kConstraintTol = 1e-8;
constexpr int kCoarseGrid = 200;
constexpr int kRefineGrid = 21;

double plogp(double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; }

double floor_rate(double r, Floor floor) { return floor == Floor::kZero ? std::max(0.0, r) : r; }

// h2 for a rate formula argument; nullopt-like NaN when outside [0, 1].
double h2_or_nan(double x) {
    if (x < 0.0 || x > 1.0) {
        return NAN;
    }
    return binary_entropy(x);
}

double checked_rate(double r, Floor floor, const char* what) {
    if (std::isnan(r)) {
        if (floor == Floor::kZero) {
            return 0.0;
        }
        throw DomainError(std::string(what) + ": entropy argument outside [0, 1]");
    }
    return floor_rate(r, floor);
}

void check_not_all_double(const ObservedRates& obs, const char* what) {
    obs.validate();
    if (obs.delta >= 1.0) {
        throw DomainError(std::string(what) + ": delta = 1 leaves no single-click key bits");
    }
}

struct Candidate {
    std::array<double, 4> b;
    double raw_rate;
};

// Returns false when b has a negative component.
bool evaluate(double e_z, double e_x, double e_y, double delta, Candidate& out) {
    const double b1 = (e_z + e_y - e_x) / 2.0;
    const double b2 = (e_z + e_x - e_y) / 2.0;
    const double b3 = (e_x + e_y - e_z) / 2.0;
    const double b0 = 1.0 - (e_z + e_x + e_y) / 2.0;
    constexpr double kNeg = -1e-15;
    if (b0 < kNeg || b1 < kNeg || b2 < kNeg || b3 < kNeg) {
        return false;
    }
    out.b = {std::max(b0, 0.0), std::max(b1, 0.0), std::max(b2, 0.0), std::max(b3, 0.0)};
    out.raw_rate = (1.0 - delta) * (1.0 - shannon_entropy(out.b));
    return true;
}

std::vector<double> grid_points(double lo, double hi, int count) {
    if (hi <= lo || count < 2) {
        return {lo};
    }
    std::vector<double> pts(count);
    for (int i = 0; i < count; ++i) {
        pts[i] = lo + (hi - lo) * i / (count - 1);
    }
    pts.back() = hi;
    return pts;
}

SixStateSolution make_solution(const ObservedRates& obs, const std::array<double, 4>& b, double raw_rate) {
    SixStateSolution s;
    s.b = b;
    s.e_z = b[1] + b[2];
    s.e_x = b[2] + b[3];
    s.e_y = b[1] + b[3];
    s.raw_rate = raw_rate;
    s.rate = std::max(0.0, raw_rate);
    auto box = sixstate_phase_error_box(obs);
    const double e_z = obs.eps / (1.0 - obs.delta);
    bool ok = std::abs(s.e_z - e_z) <= kConstraintTol;
    for (double e : {s.e_x, s.e_y}) {
        ok = ok && e >= box[0] - kConstraintTol && e <= box[1] + kConstraintTol;
    }
    for (double bi : b) {
        ok = ok && bi >= -kConstraintTol;
    }
    s.feasible = ok;
    return s;
}

}  // namespace

void ObservedRates::validate() const {
    if (!(eps >= 0.0) || !(delta >= 0.0) || !(eps + delta <= 1.0 + 1e-15)) {
        throw DomainError("ObservedRates: need eps, delta >= 0 and eps + delta <= 1");
    }
}

double binary_entropy(double x) {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw DomainError("binary_entropy: argument outside [0, 1]");
    }
    return plogp(x) + plogp(1.0 - x);
}

double shannon_entropy(std::span<const double> probs) {
    double total = 0.0;
    double h = 0.0;
    for (double p : probs) {
        if (!(p >= 0.0)) {
            throw DomainError("shannon_entropy: negative probability");
        }
        total += p;
        h += plogp(p);
    }
    if (total > 1.0 + kSumTol) {
        throw DomainError("shannon_entropy: probabilities sum to more than 1");
    }
    return h;
}

std::array<double, 2> sixstate_phase_error_box(const ObservedRates& obs) {
    check_not_all_double(obs, "sixstate_phase_error_box");
    const double scale = 1.0 - obs.delta;
    return {std::clamp((obs.eps - obs.delta) / scale, 0.0, 1.0), std::clamp((obs.eps + obs.delta) / scale, 0.0, 1.0)};
}

SixStateSolution sixstate_rate_numeric(const ObservedRates& obs, double resolution) {
    check_not_all_double(obs, "sixstate_rate_numeric");
    if (!(resolution > 0.0)) {
        throw DomainError("sixstate_rate_numeric: resolution must be positive");
    }
    const double e_z = obs.eps / (1.0 - obs.delta);
    if (e_z > 1.0) {
        throw InfeasibleError("sixstate_rate_numeric: key-basis error rate exceeds 1");
    }
    const auto box = sixstate_phase_error_box(obs);

    double x_lo = box[0], x_hi = box[1], y_lo = box[0], y_hi = box[1];
    int count = kCoarseGrid;
    bool found = false;
    Candidate best{};
    double best_x = 0.0, best_y = 0.0;
    while (true) {
        const auto xs = grid_points(x_lo, x_hi, count);
        const auto ys = grid_points(y_lo, y_hi, count);
        // Row-major scan with strict improvement: ties go to the
        // lexicographically smallest (e_x, e_y).
        Candidate c;
        for (double ex : xs) {
            for (double ey : ys) {
                if (!evaluate(e_z, ex, ey, obs.delta, c)) {
                    continue;
                }
                if (!found || c.raw_rate < best.raw_rate) {
                    best = c;
                    best_x = ex;
                    best_y = ey;
                    found = true;
                }
            }
        }
        if (!found) {
            throw InfeasibleError("sixstate_rate_numeric: no feasible (e_x, e_y) in the constraint box");
        }
        const double step_x = xs.size() > 1 ? xs[1] - xs[0] : 0.0;
        const double step_y = ys.size() > 1 ? ys[1] - ys[0] : 0.0;
        if (std::max(step_x, step_y) <= resolution) {
            break;
        }
        x_lo = std::max(box[0], best_x - 2.0 * step_x);
        x_hi = std::min(box[1], best_x + 2.0 * step_x);
        y_lo = std::max(box[0], best_y - 2.0 * step_y);
        y_hi = std::min(box[1], best_y + 2.0 * step_y);
        count = kRefineGrid;
    }
    return make_solution(obs, best.b, best.raw_rate);
}

SixStateSolution sixstate_rate_closedform(const ObservedRates& obs) {
    check_not_all_double(obs, "sixstate_rate_closedform");
    const double scale = 1.0 - obs.delta;
    const double b2 = (obs.eps - 2.0 * obs.delta) / (2.0 * scale);
    const double b1 = obs.eps / scale - b2;
    const double b3 = (obs.eps + obs.delta) / scale - b2;
    const double b0 = 1.0 - b1 - b2 - b3;
    const double e_z = obs.eps / scale;
    const double e_x_upper = sixstate_phase_error_box(obs)[1];
    if (b2 < e_z * e_x_upper || b0 < 0.0 || b1 < 0.0 || b2 < 0.0 || b3 < 0.0) {
        throw PreconditionError(
            "sixstate_rate_closedform: outside the validity region (need (eps - 2 delta)/(2(1 - delta)) >= "
            "e_z * e_x^U and all b_i >= 0); use sixstate_rate_numeric");
    }
    const std::array<double, 4> b{b0, b1, b2, b3};
    return make_solution(obs, b, scale * (1.0 - shannon_entropy(b)));
}

double bb84_rate_discard(const ObservedRates& obs, Floor floor) {
    check_not_all_double(obs, "bb84_rate_discard");
    const double scale = 1.0 - obs.delta;
    const double r = scale * (1.0 - h2_or_nan(obs.eps / scale) - h2_or_nan((obs.eps + obs.delta) / scale));
    return checked_rate(r, floor, "bb84_rate_discard");
}

double bb84_rate_random_assign(const ObservedRates& obs, Floor floor) {
    obs.validate();
    const double r = 1.0 - 2.0 * h2_or_nan(obs.eps + obs.delta / 2.0);
    return checked_rate(r, floor, "bb84_rate_random_assign");
}

double bb84_rate_statpreserve_discard(const ObservedRates& obs, Floor floor) {
    check_not_all_double(obs, "bb84_rate_statpreserve_discard");
    const double scale = 1.0 - obs.delta;
    const double r =
        scale * (1.0 - h2_or_nan(obs.eps / scale) - h2_or_nan((obs.eps + obs.delta / 2.0) / scale));
    return checked_rate(r, floor, "bb84_rate_statpreserve_discard");
}

}  // namespace squash

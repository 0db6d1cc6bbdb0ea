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

#include "squash/decoy.h"

#include <algorithm>
#include <cmath>
#include <set>

#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

#include "squash/errors.h"
#include "squash/keyrates.h"

namespace squash {

namespace {

using RealMatrix = Eigen::Matrix<DecoyReal, Eigen::Dynamic, Eigen::Dynamic>;

constexpr double kFractionYieldFloor = 1e-12;
constexpr double kResidualTol = 1e-8;
constexpr int kCoarseScan = 64;

// Poisson weights p_{mu,0..N} with N the first index whose tail mass is below
// kDecoyTailMass.
std::vector<DecoyReal> poisson_weights(const DecoyReal& mu) {
    std::vector<DecoyReal> p;
    DecoyReal term = boost::multiprecision::exp(-mu);
    DecoyReal mass = 0;
    const DecoyReal tail_limit = kDecoyTailMass;
    for (int n = 0;; ++n) {
        p.push_back(term);
        mass += term;
        if (1 - mass < tail_limit || (mu == 0 && n == 0)) {
            break;
        }
        term = term * mu / (n + 1);
    }
    return p;
}

double rate_at(const DecoyChannelModel& model, double mu, DecoyVariant variant) {
    return decoy_key_rate(model, mu, variant).rate;
}

}  // namespace

double poisson_weight(double mu, int n) {
    if (!(mu >= 0.0) || n < 0) {
        throw DomainError("poisson_weight: need mu >= 0 and n >= 0");
    }
    if (mu == 0.0) {
        return n == 0 ? 1.0 : 0.0;
    }
    return std::exp(-mu + n * std::log(mu) - std::lgamma(n + 1.0));
}

double channel_transmittance(double alpha_db_per_km, double length_km) {
    if (!(alpha_db_per_km >= 0.0) || !(length_km >= 0.0)) {
        throw DomainError("channel_transmittance: loss and length must be nonnegative");
    }
    return std::pow(10.0, -alpha_db_per_km * length_km / 10.0);
}

double yield(int n, double eta) {
    if (n < 0 || !(eta >= 0.0 && eta <= 1.0)) {
        throw DomainError("yield: need n >= 0 and eta in [0, 1]");
    }
    if (n == 0) {
        return 0.0;
    }
    if (eta == 1.0) {
        return 1.0;
    }
    return -std::expm1(n * std::log1p(-eta));
}

void DecoyChannelModel::validate() const {
    if (!(alpha_db_per_km >= 0.0) || !(length_km >= 0.0)) {
        throw DomainError("DecoyChannelModel: loss and length must be nonnegative");
    }
    if (!(eta_bob >= 0.0 && eta_bob <= 1.0)) {
        throw DomainError("DecoyChannelModel: detection efficiency must lie in [0, 1]");
    }
    ObservedRates{eps, delta}.validate();
}

double DecoyChannelModel::eta() const { return channel_transmittance(alpha_db_per_km, length_km) * eta_bob; }

ClickFractions DecoyChannelModel::fractions() const { return ClickFractions{eps, 1.0 - eps - delta, delta}; }

std::optional<ClickFractions> IntensityObservables::fractions() const {
    if (gain <= 0) {
        return std::nullopt;
    }
    return ClickFractions{static_cast<double>(error_single_gain / gain),
                          static_cast<double>(correct_single_gain / gain), static_cast<double>(double_gain / gain)};
}

PerPhotonStatistics model_statistics(const DecoyChannelModel& model, int n_max) {
    model.validate();
    PerPhotonStatistics out;
    const double eta = model.eta();
    for (int n = 0; n <= n_max; ++n) {
        PhotonNumberStatistics s;
        s.photons = n;
        s.yield = yield(n, eta);
        s.fractions = model.fractions();
        out.push_back(s);
    }
    return out;
}

IntensityObservables intensity_observables(const DecoyChannelModel& model, double mu) {
    model.validate();
    if (!(mu >= 0.0)) {
        throw DomainError("intensity_observables: mu must be nonnegative");
    }
    const DecoyReal eta = model.eta();
    const DecoyReal survive = 1 - eta;
    const auto p = poisson_weights(DecoyReal(mu));
    DecoyReal gain = 0;
    DecoyReal survive_pow = 1;
    for (size_t n = 0; n < p.size(); ++n) {
        gain += p[n] * (1 - survive_pow);
        survive_pow *= survive;
    }
    IntensityObservables out;
    out.mu = mu;
    out.gain = gain;
    const ClickFractions f = model.fractions();
    out.error_single_gain = gain * DecoyReal(f.error_single);
    out.correct_single_gain = gain * DecoyReal(f.correct_single);
    out.double_gain = gain * DecoyReal(f.double_click);
    return out;
}

PerPhotonStatistics infinite_decoy_solve(std::span<const IntensityObservables> samples, int n_max) {
    if (n_max < 0) {
        throw DomainError("infinite_decoy_solve: n_max must be nonnegative");
    }
    std::set<double> distinct;
    for (const auto& s : samples) {
        if (!(s.mu >= 0.0)) {
            throw DomainError("infinite_decoy_solve: intensities must be nonnegative");
        }
        distinct.insert(s.mu);
    }
    const int unknowns = static_cast<int>(distinct.size());
    if (unknowns < n_max + 1) {
        throw DecoyRecoveryError("infinite_decoy_solve: " + std::to_string(unknowns) +
                                     " distinct intensities cannot determine " + std::to_string(n_max + 1) +
                                     " photon-number components (rank deficient design)",
                                 unknowns, n_max + 1, NAN);
    }

    const int rows = static_cast<int>(samples.size());
    RealMatrix design(rows, unknowns);
    RealMatrix rhs(rows, 4);
    for (int j = 0; j < rows; ++j) {
        const DecoyReal mu = samples[j].mu;
        DecoyReal p = boost::multiprecision::exp(-mu);
        for (int n = 0; n < unknowns; ++n) {
            design(j, n) = p;
            p = p * mu / (n + 1);
        }
        rhs(j, 0) = samples[j].gain;
        rhs(j, 1) = samples[j].error_single_gain;
        rhs(j, 2) = samples[j].correct_single_gain;
        rhs(j, 3) = samples[j].double_gain;
    }

    // Column equilibration keeps the pivoting meaningful across the
    // factorially decaying Poisson columns.
    std::vector<DecoyReal> scale(unknowns);
    for (int n = 0; n < unknowns; ++n) {
        scale[n] = design.col(n).norm();
        if (scale[n] > 0) {
            design.col(n) /= scale[n];
        } else {
            scale[n] = 1;
        }
    }
    Eigen::ColPivHouseholderQR<RealMatrix> qr(design);
    qr.setThreshold(DecoyReal(1e-40));
    const int rank = static_cast<int>(qr.rank());
    if (rank < unknowns) {
        throw DecoyRecoveryError("infinite_decoy_solve: design matrix is rank deficient (rank " +
                                     std::to_string(rank) + " of " + std::to_string(unknowns) + ")",
                                 rank, unknowns, NAN);
    }
    RealMatrix x = qr.solve(rhs);
    const double residual = static_cast<double>((design * x - rhs).cwiseAbs().maxCoeff());
    if (!(residual <= kResidualTol)) {
        throw DecoyRecoveryError("infinite_decoy_solve: residual " + std::to_string(residual) + " exceeds 1e-8",
                                 rank, unknowns, residual);
    }
    for (int n = 0; n < unknowns; ++n) {
        x.row(n) /= scale[n];
    }

    PerPhotonStatistics out;
    for (int n = 0; n <= n_max; ++n) {
        PhotonNumberStatistics s;
        s.photons = n;
        s.yield = static_cast<double>(x(n, 0));
        if (s.yield > kFractionYieldFloor) {
            s.fractions = ClickFractions{static_cast<double>(x(n, 1) / x(n, 0)), static_cast<double>(x(n, 2) / x(n, 0)),
                                         static_cast<double>(x(n, 3) / x(n, 0))};
        }
        out.push_back(s);
    }
    return out;
}

double single_photon_phase_error_bound(const ClickFractions& f1) {
    if (!(f1.double_click < 1.0)) {
        throw DomainError("single_photon_phase_error_bound: F_1^d = 1 leaves no single clicks");
    }
    return std::clamp((f1.error_single + f1.double_click) / (1.0 - f1.double_click), 0.0, 1.0);
}

double single_photon_phase_error_bound_stat_preserving(const ClickFractions& f1) {
    if (!(f1.double_click < 1.0)) {
        throw DomainError("single_photon_phase_error_bound: F_1^d = 1 leaves no single clicks");
    }
    return std::clamp((f1.error_single + f1.double_click / 2.0) / (1.0 - f1.double_click), 0.0, 1.0);
}

DecoyKeyRate decoy_key_rate(const DecoyChannelModel& model, double mu_bar, DecoyVariant variant,
                            RateNormalization normalization) {
    const IntensityObservables obs = intensity_observables(model, mu_bar);
    const auto f_mu = obs.fractions();
    if (!f_mu || !(f_mu->error_single + f_mu->correct_single > 0.0)) {
        throw DomainError("decoy_key_rate: no single-click events at this intensity");
    }
    const ClickFractions f1 = model.fractions();

    DecoyKeyRate out;
    out.gain = obs.q();
    out.single_photon_gain = poisson_weight(mu_bar, 1) * yield(1, model.eta());
    out.bit_error = f_mu->error_single / (f_mu->error_single + f_mu->correct_single);
    out.phase_error_bound = variant == DecoyVariant::kUniversal
                                ? single_photon_phase_error_bound(f1)
                                : single_photon_phase_error_bound_stat_preserving(f1);
    out.raw_rate = -out.gain * (1.0 - f_mu->double_click) * binary_entropy(out.bit_error) +
                   out.single_photon_gain * (1.0 - f1.double_click) * (1.0 - binary_entropy(out.phase_error_bound));
    if (normalization == RateNormalization::kPerDetectedSignal) {
        out.raw_rate /= out.gain;
    }
    out.phase_error_exceeds_half = out.phase_error_bound >= 0.5;
    out.rate = out.phase_error_exceeds_half ? 0.0 : std::max(0.0, out.raw_rate);
    return out;
}

MuOptimum optimize_mu(const DecoyChannelModel& model, DecoyVariant variant, double mu_lo, double mu_hi) {
    if (!(mu_lo > 0.0) || !(mu_hi > mu_lo)) {
        throw DomainError("optimize_mu: need 0 < mu_lo < mu_hi");
    }
    std::vector<double> mus(kCoarseScan);
    std::vector<double> rates(kCoarseScan);
    int best = 0;
    for (int i = 0; i < kCoarseScan; ++i) {
        mus[i] = mu_lo + (mu_hi - mu_lo) * i / (kCoarseScan - 1);
        rates[i] = rate_at(model, mus[i], variant);
        if (rates[i] > rates[best]) {
            best = i;
        }
    }
    MuOptimum out;
    out.coarse_mu = mus[best];
    out.coarse_rate = rates[best];
    int turns = 0;
    int direction = 0;
    for (int i = 1; i < kCoarseScan; ++i) {
        const int d = rates[i] > rates[i - 1] ? 1 : (rates[i] < rates[i - 1] ? -1 : 0);
        if (d != 0 && direction != 0 && d != direction) {
            ++turns;
        }
        if (d != 0) {
            direction = d;
        }
    }
    out.unimodal = turns <= 1 && !(turns == 1 && direction == 1);
    if (out.coarse_rate <= 0.0) {
        out.mu = out.coarse_mu;
        out.rate = 0.0;
        return out;
    }

    constexpr double kInvPhi = 0.61803398874989484820;
    double a = mus[std::max(best - 1, 0)];
    double b = mus[std::min(best + 1, kCoarseScan - 1)];
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double fc = rate_at(model, c, variant);
    double fd = rate_at(model, d, variant);
    while (b - a > 1e-10 * std::max(1.0, b)) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kInvPhi * (b - a);
            fc = rate_at(model, c, variant);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kInvPhi * (b - a);
            fd = rate_at(model, d, variant);
        }
    }
    const double mu_star = 0.5 * (a + b);
    const double rate_star = rate_at(model, mu_star, variant);
    if (rate_star >= out.coarse_rate) {
        out.mu = mu_star;
        out.rate = rate_star;
    } else {
        out.mu = out.coarse_mu;
        out.rate = out.coarse_rate;
    }
    return out;
}

}  // namespace squash

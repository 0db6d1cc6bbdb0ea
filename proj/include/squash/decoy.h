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

#ifndef SQUASH_DECOY_H
#define SQUASH_DECOY_H

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace squash {

/// Working precision of the decoy estimation path. Recovering Y_n from
/// gains is an ill-conditioned moment problem (condition ~1e15 for 20
/// intensities on [0.05, 2]), so observables and the solve carry 50 digits.
using DecoyReal =
    boost::multiprecision::number<boost::multiprecision::cpp_bin_float<50>, boost::multiprecision::et_off>;

/// Poisson tail mass at which the high-precision photon-number sums stop.
inline constexpr double kDecoyTailMass = 1e-40;

/// e^{-mu} mu^n / n!, evaluated in log space.
double poisson_weight(double mu, int n);

/// 10^{-alpha l / 10}.
double channel_transmittance(double alpha_db_per_km, double length_km);

/// 1 - (1 - eta)^n; zero for the vacuum (no dark counts).
double yield(int n, double eta);

/// Per-photon-number event fractions; they sum to 1.
struct ClickFractions {
    double error_single = 0.0;
    double correct_single = 0.0;
    double double_click = 0.0;
};

/// Weak-coherent-source channel: fiber loss, Bob's efficiency, and an
/// attack that fixes F_n^{s,e} = eps and F_n^d = delta for every n.
struct DecoyChannelModel {
    double alpha_db_per_km = 0.21;
    double length_km = 0.0;
    double eta_bob = 0.045;
    double eps = 0.0;
    double delta = 0.0;

    void validate() const;
    double eta() const;
    ClickFractions fractions() const;
};

struct PhotonNumberStatistics {
    int photons = 0;
    double yield = 0.0;
    /// Absent when the yield is too small (<= 1e-12) to define fractions.
    std::optional<ClickFractions> fractions;
};

using PerPhotonStatistics = std::vector<PhotonNumberStatistics>;

/// Gain and gain-weighted fractions at one intensity: Q_mu, Q_mu F_mu^{s,e}, ...
struct IntensityObservables {
    double mu = 0.0;
    DecoyReal gain = 0;
    DecoyReal error_single_gain = 0;
    DecoyReal correct_single_gain = 0;
    DecoyReal double_gain = 0;

    double q() const { return static_cast<double>(gain); }
    /// F_mu^{s,e}, F_mu^{s,c}, F_mu^d; absent when Q_mu = 0.
    std::optional<ClickFractions> fractions() const;
};

/// Planted statistics of the model for n = 0..n_max.
PerPhotonStatistics model_statistics(const DecoyChannelModel& model, int n_max);

IntensityObservables intensity_observables(const DecoyChannelModel& model, double mu);

/// Thrown by infinite_decoy_solve when the linear system cannot be solved.
class DecoyRecoveryError : public std::runtime_error {
   public:
    DecoyRecoveryError(const std::string& what, int rank, int unknowns, double residual)
        : std::runtime_error(what), rank_(rank), unknowns_(unknowns), residual_(residual) {}
    int rank() const { return rank_; }
    int unknowns() const { return unknowns_; }
    double residual() const { return residual_; }

   private:
    int rank_;
    int unknowns_;
    double residual_;
};

/// Recovers Y_n and F_n for n <= n_max from gains sampled at several
/// intensities. The Poisson mixture is truncated at one unknown per distinct
/// intensity and solved by pivoted QR least squares; failures (fewer than
/// n_max + 1 distinct intensities, rank deficiency, residual > 1e-8) throw
/// DecoyRecoveryError.
PerPhotonStatistics infinite_decoy_solve(std::span<const IntensityObservables> samples, int n_max);

/// Universal-squash single-photon phase error bound
/// (F_1^{s,e} + F_1^d) / (1 - F_1^d), clamped to [0, 1].
double single_photon_phase_error_bound(const ClickFractions& f1);

/// Statistics-preserving variant (F_1^{s,e} + F_1^d / 2) / (1 - F_1^d).
double single_photon_phase_error_bound_stat_preserving(const ClickFractions& f1);

enum class DecoyVariant { kUniversal, kStatPreserving };
enum class RateNormalization { kPerTransmittedSignal, kPerDetectedSignal };

struct DecoyKeyRate {
    double rate = 0.0;
    double raw_rate = 0.0;
    double gain = 0.0;                // Q_mu
    double single_photon_gain = 0.0;  // Q_{mu,1}
    double bit_error = 0.0;           // e_Z^key at mu
    double phase_error_bound = 0.0;   // e_{X,1}^{key,U}
    /// Set when the phase error bound reaches 1/2; the rate is then 0.
    bool phase_error_exceeds_half = false;
};

/// GLLP rate -Q(1 - F^d) h2(e_Z) + Q_1 (1 - F_1^d)[1 - h2(e_X1^U)], floored at 0.
DecoyKeyRate decoy_key_rate(const DecoyChannelModel& model, double mu_bar, DecoyVariant variant,
                            RateNormalization normalization = RateNormalization::kPerTransmittedSignal);

struct MuOptimum {
    double mu = 0.0;
    double rate = 0.0;
    double coarse_mu = 0.0;
    double coarse_rate = 0.0;
    /// The coarse scan rose and then fell at most once.
    bool unimodal = true;
};

/// Coarse scan (64 points) plus golden-section refinement of the rate over mu.
MuOptimum optimize_mu(const DecoyChannelModel& model, DecoyVariant variant, double mu_lo = 1e-4,
                      double mu_hi = 2.0);

}  // namespace squash

#endif

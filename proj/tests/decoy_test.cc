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

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "squash/errors.h"

using namespace squash;

namespace {

std::vector<IntensityObservables> sample(const DecoyChannelModel& model, int count, double lo, double hi) {
    std::vector<IntensityObservables> out;
    for (int j = 0; j < count; ++j) {
        out.push_back(intensity_observables(model, lo + (hi - lo) * j / (count - 1)));
    }
    return out;
}

DecoyChannelModel gys(double eps, double delta, double length) {
    DecoyChannelModel m;
    m.eps = eps;
    m.delta = delta;
    m.length_km = length;
    return m;
}

}  // namespace

TEST(Poisson, Values) {
    EXPECT_NEAR(poisson_weight(0.5, 0), 0.6065306597126334, 1e-15);
    EXPECT_EQ(poisson_weight(0.0, 0), 1.0);
    EXPECT_EQ(poisson_weight(0.0, 3), 0.0);
    double total = 0.0;
    for (int n = 0; n <= 40; ++n) {
        total += poisson_weight(0.5, n);
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
    EXPECT_GT(poisson_weight(50.0, 300), 0.0);
    EXPECT_THROW(poisson_weight(-1.0, 0), DomainError);
}

TEST(Channel, Transmittance) {
    EXPECT_EQ(channel_transmittance(0.21, 0.0), 1.0);
    EXPECT_NEAR(channel_transmittance(0.21, 100.0), 0.007943282347242814, 1e-17);
    EXPECT_EQ(channel_transmittance(0.21, 1e6), 0.0);
}

TEST(Channel, Yield) {
    EXPECT_NEAR(yield(1, 0.37), 0.37, 1e-16);
    EXPECT_EQ(yield(0, 0.37), 0.0);
    EXPECT_NEAR(yield(3, 0.1), 0.271, 1e-15);
    double prev = 0.0;
    for (int n = 1; n < 30; ++n) {
        EXPECT_GE(yield(n, 0.05), prev);
        prev = yield(n, 0.05);
    }
}

TEST(IntensityObservables, Vacuum) {
    const IntensityObservables o = intensity_observables(gys(0.01, 0.01, 0), 0.0);
    EXPECT_EQ(o.q(), 0.0);
    EXPECT_FALSE(o.fractions().has_value());
}

TEST(IntensityObservables, ConstantFractions) {
    const DecoyChannelModel m = gys(0.03, 0.02, 25);
    for (double mu : {0.1, 0.5, 1.5}) {
        const auto f = intensity_observables(m, mu).fractions();
        ASSERT_TRUE(f.has_value());
        EXPECT_NEAR(f->error_single, 0.03, 1e-15);
        EXPECT_NEAR(f->double_click, 0.02, 1e-15);
        EXPECT_NEAR(f->error_single + f->correct_single + f->double_click, 1.0, 1e-12);
    }
}

TEST(IntensityObservables, LosslessGain) {
    DecoyChannelModel m;
    m.eta_bob = 1.0;
    const IntensityObservables o = intensity_observables(m, 0.5);
    EXPECT_NEAR(o.q(), 0.3934693402873666, 1e-15);
}

TEST(InfiniteDecoy, RoundTrip) {
    DecoyChannelModel m;
    m.alpha_db_per_km = 0.0;
    m.eta_bob = 0.05;
    m.eps = 0.02;
    m.delta = 0.01;
    const auto samples = sample(m, 20, 0.05, 2.0);
    const PerPhotonStatistics got = infinite_decoy_solve(samples, 8);
    const PerPhotonStatistics want = model_statistics(m, 8);
    ASSERT_EQ(got.size(), 9u);
    for (int n = 0; n <= 8; ++n) {
        EXPECT_NEAR(got[n].yield, want[n].yield, 1e-6) << n;
        if (n == 0) {
            EXPECT_FALSE(got[n].fractions.has_value());
            continue;
        }
        ASSERT_TRUE(got[n].fractions.has_value()) << n;
        EXPECT_NEAR(got[n].fractions->error_single, 0.02, 1e-6) << n;
        EXPECT_NEAR(got[n].fractions->correct_single, 0.97, 1e-6) << n;
        EXPECT_NEAR(got[n].fractions->double_click, 0.01, 1e-6) << n;
        const auto& f = *got[n].fractions;
        EXPECT_NEAR(f.error_single + f.correct_single + f.double_click, 1.0, 1e-6);
    }
}

TEST(InfiniteDecoy, VacuumData) {
    std::vector<IntensityObservables> samples;
    for (int j = 0; j < 6; ++j) {
        IntensityObservables o;
        o.mu = 0.1 * (j + 1);
        samples.push_back(o);
    }
    const PerPhotonStatistics got = infinite_decoy_solve(samples, 4);
    for (const auto& s : got) {
        EXPECT_EQ(s.yield, 0.0);
        EXPECT_FALSE(s.fractions.has_value());
    }
}

TEST(InfiniteDecoy, DuplicateIntensitiesAreRankDeficient) {
    const DecoyChannelModel m = gys(0.01, 0.01, 0);
    const std::vector<IntensityObservables> samples(10, intensity_observables(m, 0.4));
    try {
        infinite_decoy_solve(samples, 3);
        FAIL() << "expected DecoyRecoveryError";
    } catch (const DecoyRecoveryError& e) {
        EXPECT_LT(e.rank(), 4);
    }
}

TEST(PhaseErrorBound, Values) {
    EXPECT_EQ(single_photon_phase_error_bound({0.0, 1.0, 0.0}), 0.0);
    EXPECT_NEAR(single_photon_phase_error_bound({0.02, 0.97, 0.01}), 0.03 / 0.99, 1e-15);
    EXPECT_EQ(single_photon_phase_error_bound({0.0, 0.5, 0.5}), 1.0);
    EXPECT_THROW(single_photon_phase_error_bound({0.0, 0.0, 1.0}), DomainError);
    EXPECT_NEAR(single_photon_phase_error_bound_stat_preserving({0.02, 0.97, 0.01}), 0.025 / 0.99, 1e-15);
}

TEST(DecoyKeyRate, SinglePhotonCeiling) {
    DecoyChannelModel m;
    m.eta_bob = 1.0;
    const DecoyKeyRate r = decoy_key_rate(m, 0.5, DecoyVariant::kUniversal);
    EXPECT_NEAR(r.rate, 0.3032653298563167, 1e-14);
    const DecoyKeyRate d = decoy_key_rate(m, 0.5, DecoyVariant::kUniversal, RateNormalization::kPerDetectedSignal);
    EXPECT_NEAR(d.rate, 0.3032653298563167 / 0.3934693402873666, 1e-13);
}

TEST(DecoyKeyRate, VariantsAgreeWithoutDoubleClicks) {
    const DecoyChannelModel m = gys(0.02, 0.0, 30);
    EXPECT_EQ(decoy_key_rate(m, 0.4, DecoyVariant::kUniversal).rate,
              decoy_key_rate(m, 0.4, DecoyVariant::kStatPreserving).rate);
}

TEST(DecoyKeyRate, UniversalBelowStatPreserving) {
    for (double eps : {0.0, 0.01, 0.03}) {
        for (double delta : {0.0, 0.01, 0.05}) {
            const DecoyChannelModel m = gys(eps, delta, 50);
            for (double mu : {0.1, 0.5, 0.9}) {
                EXPECT_LE(decoy_key_rate(m, mu, DecoyVariant::kUniversal).rate,
                          decoy_key_rate(m, mu, DecoyVariant::kStatPreserving).rate + 1e-18);
            }
        }
    }
}

TEST(DecoyKeyRate, PhaseErrorAboveHalfIsFlagged) {
    const DecoyKeyRate r = decoy_key_rate(gys(0.2, 0.3, 0), 0.5, DecoyVariant::kUniversal);
    EXPECT_TRUE(r.phase_error_exceeds_half);
    EXPECT_EQ(r.rate, 0.0);
}

TEST(OptimizeMu, GoldenSectionAgreesWithFineScan) {
    DecoyChannelModel m;
    m.eta_bob = 1.0;
    const MuOptimum opt = optimize_mu(m, DecoyVariant::kUniversal);
    double best_mu = 0.0, best = -1.0;
    for (int i = 0; i <= 20000; ++i) {
        const double mu = 1e-4 + (2.0 - 1e-4) * i / 20000.0;
        const double r = decoy_key_rate(m, mu, DecoyVariant::kUniversal).rate;
        if (r > best) {
            best = r;
            best_mu = mu;
        }
    }
    EXPECT_NEAR(opt.mu, best_mu, 1e-3);
    EXPECT_NEAR(opt.mu, 1.0, 1e-6);
    EXPECT_GE(opt.rate, best - 1e-12);
    EXPECT_TRUE(opt.unimodal);
}

TEST(OptimizeMu, RateNonincreasingInDistanceAndPositive) {
    double prev = 1.0;
    for (int l = 0; l <= 200; l += 20) {
        const MuOptimum opt = optimize_mu(gys(0.01, 0.01, l), DecoyVariant::kUniversal);
        EXPECT_GT(opt.rate, 0.0) << l;
        EXPECT_LE(opt.rate, prev) << l;
        prev = opt.rate;
    }
}

TEST(OptimizeMu, AllZeroRates) {
    const MuOptimum opt = optimize_mu(gys(0.2, 0.3, 0), DecoyVariant::kUniversal);
    EXPECT_EQ(opt.rate, 0.0);
    EXPECT_EQ(opt.mu, opt.coarse_mu);
}

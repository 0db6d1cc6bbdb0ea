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

#include "squash/montecarlo.h"

#include <cmath>

#include <gtest/gtest.h>

#include "squash/errors.h"

using namespace squash;

namespace {

SessionConfig config(std::uint64_t n, std::uint64_t seed, int threads = 1) {
    SessionConfig c;
    c.num_signals = n;
    c.seed = seed;
    c.threads = threads;
    return c;
}

bool same(const EventTally& a, const EventTally& b) {
    return a.correct_single == b.correct_single && a.error_single == b.error_single &&
           a.double_click == b.double_click;
}

}  // namespace

TEST(AttackOutputState, Untouched) {
    const Eigen::Vector2cd v = basis_state(PauliBasis::Y, 1);
    const auto s = attack_output_state(v, AttackDraw{});
    EXPECT_EQ(s.photons(), 1);
    EXPECT_LE((s.density_matrix() - v * v.adjoint()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(AttackOutputState, MatchingCopyBasisIsDeterministic) {
    for (int i : {1, 2}) {
        const auto s = attack_output_state(basis_state(PauliBasis::Z, 0), AttackDraw{i, PauliBasis::Z});
        const auto d = situation4_distribution(s, QubitPovm::in_basis(PauliBasis::Z));
        EXPECT_NEAR(d.bit0, 1.0, 1e-15);
    }
}

TEST(AttackOutputState, FootnoteProbabilities) {
    const auto s = attack_output_state(basis_state(PauliBasis::X, 0), AttackDraw{2, PauliBasis::Z});
    const auto d = situation4_distribution(s, QubitPovm::in_basis(PauliBasis::X));
    EXPECT_NEAR(d.bit0, 0.25, 1e-15);
    EXPECT_NEAR(d.bit1, 0.25, 1e-15);
    EXPECT_NEAR(d.double_click, 0.5, 1e-15);
}

TEST(ExpectedStatistics, MatchFootnoteRates) {
    const CopyAttack a{0.3, 0.3};
    for (PauliBasis b : {PauliBasis::X, PauliBasis::Y, PauliBasis::Z}) {
        const BasisExpectation e = expected_basis_statistics(b, a);
        EXPECT_NEAR(e.error_single, 0.3 / 3 + 0.3 / 6, 1e-15);
        EXPECT_NEAR(e.double_click, 0.3 / 3, 1e-15);
        EXPECT_NEAR(e.correct_single + e.error_single + e.double_click, 1.0, 1e-15);
    }
}

TEST(Session, NoiselessHasNoErrors) {
    const SessionTallies t = simulate_session(config(20000, 3), CopyAttack{});
    for (const auto& b : t.test) {
        EXPECT_EQ(b.error_single, 0.0);
        EXPECT_EQ(b.double_click, 0.0);
    }
    EXPECT_EQ(t.key.double_click, 0.0);
    EXPECT_GT(t.key.single, 0.0);
    const EmpiricalReport r = empirical_report(t, config(20000, 3), CopyAttack{});
    EXPECT_NEAR(r.rate, 1.0, 1e-12);
}

TEST(Session, DeterministicAcrossThreadCounts) {
    const CopyAttack a{0.2, 0.1};
    const SessionTallies one = simulate_session(config(30001, 5, 1), a);
    const SessionTallies again = simulate_session(config(30001, 5, 1), a);
    const SessionTallies four = simulate_session(config(30001, 5, 4), a);
    for (int b = 0; b < 3; ++b) {
        EXPECT_TRUE(same(one.test[b], again.test[b]));
        EXPECT_TRUE(same(one.test[b], four.test[b]));
    }
    EXPECT_TRUE(same(one.key_events, four.key_events));
}

TEST(Session, FrequenciesWithinFiveSigma) {
    for (const CopyAttack a : {CopyAttack{0.3, 0.3}, CopyAttack{0.1, 0.0}, CopyAttack{0.0, 0.5}}) {
        const SessionConfig c = config(200000, 8, 2);
        const EmpiricalReport r = empirical_report(simulate_session(c, a), c, a);
        EXPECT_TRUE(r.all_within);
        EXPECT_NEAR(r.expected.eps, a.p1 / 3 + a.p2 / 6, 1e-15);
        EXPECT_NEAR(r.expected.delta, a.p2 / 3, 1e-15);
    }
}

TEST(Session, Bb84UsesTwoBases) {
    SessionConfig c = config(10000, 9);
    c.protocol = Protocol::kBB84;
    const SessionTallies t = simulate_session(c, CopyAttack{0.2, 0.2});
    EXPECT_EQ(t.test[static_cast<int>(PauliBasis::Y)].total(), 0.0);
    EXPECT_GT(t.test[static_cast<int>(PauliBasis::X)].total(), 0.0);
}

TEST(Session, RateConvergesWithSampleSize) {
    const CopyAttack a{0.1, 0.05};
    double prev_gap = 1.0;
    for (std::uint64_t n : {10000ull, 1000000ull}) {
        const SessionConfig c = config(n, 12, 2);
        const EmpiricalReport r = empirical_report(simulate_session(c, a), c, a);
        const double gap = std::abs(r.rate - r.expected_rate);
        EXPECT_LT(gap, 0.1);
        if (n == 1000000ull) {
            EXPECT_LT(gap, prev_gap + 1e-3);
            EXPECT_LT(gap, 0.01);
        }
        prev_gap = gap;
    }
}

TEST(Validation, RejectsBadInputs) {
    EXPECT_THROW(CopyAttack({0.7, 0.5}).validate(), DomainError);
    EXPECT_THROW(simulate_session(config(0, 1), CopyAttack{}), DomainError);
}

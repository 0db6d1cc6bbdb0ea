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

#ifndef SQUASH_MONTECARLO_H
#define SQUASH_MONTECARLO_H

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "squash/detection.h"
#include "squash/keyrates.h"
#include "squash/statbounds.h"
#include "squash/symstate.h"

namespace squash {

/// Eve forwards i copies of the signal, cloned in a basis W drawn uniformly
/// from {X, Y, Z}: i = 1 with probability p1, i = 2 with probability p2.
struct CopyAttack {
    double p1 = 0.0;
    double p2 = 0.0;

    void validate() const;
};

struct AttackDraw {
    int copies = 0;  // 0 means the signal passes untouched
    PauliBasis basis = PauliBasis::Z;
};

/// Bob's reduced state after the copy: |a|^2 |0_W><0_W|^{(x)i} + |b|^2 |1_W><1_W|^{(x)i}.
SymmetricPhotonState attack_output_state(const Eigen::Vector2cd& input, const AttackDraw& draw);

enum class Protocol { kSixState, kBB84 };

struct SessionConfig {
    Protocol protocol = Protocol::kSixState;
    std::uint64_t num_signals = 0;
    PauliBasis key_basis = PauliBasis::Z;
    /// Fraction of key-basis signals labeled as key bits; the rest are test bits.
    double key_fraction = 0.5;
    std::uint64_t seed = 0;
    int threads = 1;

    void validate() const;
    std::vector<PauliBasis> bases() const;
};

/// Tallies of a sifted session, indexed by PauliBasis.
struct SessionTallies {
    std::array<EventTally, 3> test{};
    /// Key bits with their (normally hidden) correctness, for diagnostics.
    EventTally key_events;
    KeyTally key;
};

/// Expected per-signal event fractions in one basis, averaged over Alice's
/// bit and Eve's draw.
struct BasisExpectation {
    double correct_single = 0.0;
    double error_single = 0.0;
    double double_click = 0.0;
};

BasisExpectation expected_basis_statistics(PauliBasis basis, const CopyAttack& attack);

/// Deterministic for a fixed (config, attack) regardless of config.threads.
SessionTallies simulate_session(const SessionConfig& config, const CopyAttack& attack);

struct FrequencyCheck {
    std::string label;
    double observed = 0.0;
    double expected = 0.0;
    double sigma = 0.0;
    bool within = false;
};

struct EmpiricalReport {
    std::vector<FrequencyCheck> checks;
    bool all_within = true;
    ObservedRates observed;  // pooled over test bases
    ObservedRates expected;
    std::array<RateInterval, 3> error_intervals{};
    /// Squashed-qubit error rate in each basis, eps + delta / 2 on the sample.
    std::array<double, 3> squashed_error{};
    double rate = 0.0;
    double expected_rate = 0.0;
};

/// Compares the tallies with the exact detection probabilities (5 sigma),
/// and runs the pooled rates through the protocol's key-rate formula.
EmpiricalReport empirical_report(const SessionTallies& tallies, const SessionConfig& config,
                                 const CopyAttack& attack);

}  // namespace squash

#endif

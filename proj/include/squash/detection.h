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

#ifndef SQUASH_DETECTION_H
#define SQUASH_DETECTION_H

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "squash/symstate.h"

namespace squash {

inline constexpr double kPovmTol = 1e-10;

/// Largest number of click-count vectors pnr_distribution will enumerate.
inline constexpr std::uint64_t kMaxCountVectors = 1'000'000;

enum class PauliBasis { X, Y, Z };

/// |b_W>: |0_Z> = H, |1_Z> = V, |b_X> = (|0> + (-1)^b |1>)/sqrt2,
/// |b_Y> = (|0> + (-1)^b i |1>)/sqrt2.
Eigen::Vector2cd basis_state(PauliBasis basis, int bit);

/// Pauli observable |0_W><0_W| - |1_W><1_W|.
Eigen::Matrix2cd pauli(PauliBasis basis);

char basis_name(PauliBasis basis);

/// m-element POVM on one qubit. Element i is the i-th detector.
class QubitPovm {
   public:
    /// Validates m >= 2, each element PSD and the sum equal to identity (1e-10).
    static QubitPovm from_elements(std::vector<Eigen::Matrix2cd> elements);
    /// {U^dagger |0><0| U, U^dagger |1><1| U}: waveplates U followed by a PBS.
    static QubitPovm projective(const QubitUnitary& u);
    static QubitPovm in_basis(PauliBasis basis);

    int size() const { return static_cast<int>(elements_.size()); }
    const Eigen::Matrix2cd& element(int i) const { return elements_[i]; }
    const std::vector<Eigen::Matrix2cd>& elements() const { return elements_; }

   private:
    explicit QubitPovm(std::vector<Eigen::Matrix2cd> elements) : elements_(std::move(elements)) {}
    std::vector<Eigen::Matrix2cd> elements_;
};

struct PnrEntry {
    std::vector<int> counts;  // (n_1, ..., n_m), sum n
    double probability;
};

/// Full photon-number-resolved output law (Situation 5): probability of each
/// click-count vector, entries in lexicographic order of counts.
class PnrDistribution {
   public:
    PnrDistribution(int photons, int outcomes, std::vector<PnrEntry> entries);

    int photons() const { return photons_; }
    int outcomes() const { return outcomes_; }
    const std::vector<PnrEntry>& entries() const { return entries_; }
    /// Zero for count vectors not present.
    double probability(const std::vector<int>& counts) const;
    double total() const;

   private:
    int photons_;
    int outcomes_;
    std::vector<PnrEntry> entries_;
};

/// Probability of each POVM outcome i = 0..m-1.
struct OutcomeDistribution {
    std::vector<double> probabilities;
    double total() const;
};

/// Threshold-detector events for a two-detector setup.
struct ThresholdDistribution {
    double bit0 = 0.0;
    double bit1 = 0.0;
    double double_click = 0.0;
};

struct Theorem1Report {
    OutcomeDistribution squashed;        // p^SQ, Situation 1
    OutcomeDistribution post_processed;  // p^CP, Situation 2
    double max_abs_diff = 0.0;
    bool pass = false;
};

/// Number of compositions of n into m nonnegative parts, C(n+m-1, m-1).
std::uint64_t count_vector_count(int n, int m);

/// Situation 5: probability of each count vector. Throws CapacityError when
/// the number of count vectors exceeds kMaxCountVectors.
PnrDistribution pnr_distribution(const SymmetricPhotonState& state, const QubitPovm& povm);

/// Situation 1: squash, then the single-qubit POVM.
OutcomeDistribution situation1_distribution(const SymmetricPhotonState& state, const QubitPovm& povm);

/// Situation 2: PNR detection, then output i with probability n_i / n.
OutcomeDistribution situation2_distribution(const SymmetricPhotonState& state, const QubitPovm& povm);
OutcomeDistribution situation2_distribution(const PnrDistribution& pnr);

/// Situation 4 (equivalently 3): bit i iff every photon went to detector i.
/// Throws UnsupportedError unless the POVM has two elements.
ThresholdDistribution situation4_distribution(const SymmetricPhotonState& state, const QubitPovm& povm);
ThresholdDistribution situation4_distribution(const PnrDistribution& pnr);

/// Compares Situations 1 and 2; pass iff max_i |p_i^CP - p_i^SQ| <= tol.
Theorem1Report verify_theorem1(const SymmetricPhotonState& state, const QubitPovm& povm, double tol);

/// Same check with independent POVMs for the two situations. Only useful as a
/// negative control; verify_theorem1 calls this with the same POVM twice.
Theorem1Report compare_situations(const SymmetricPhotonState& state, const QubitPovm& squash_povm,
                                  const QubitPovm& pnr_povm, double tol);

}  // namespace squash

#endif

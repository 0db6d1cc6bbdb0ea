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

// Brute-force references in the 2^n tensor space, kept independent of the
// Dicke-basis code paths they check.

#ifndef SQUASH_TESTS_ORACLE_H
#define SQUASH_TESTS_ORACLE_H

#include <array>
#include <map>
#include <vector>

#include <Eigen/Dense>

#include "squash/detection.h"
#include "squash/random.h"
#include "squash/symstate.h"

namespace squash::oracle {

/// Tensor product of single-photon vectors; photon 1 is the most significant bit.
Eigen::VectorXcd kron_vectors(const std::vector<Eigen::Vector2cd>& factors);

/// Average of P_sigma over all n! photon permutations.
Eigen::MatrixXcd symmetric_projector(int n);

/// Embeds a Dicke-basis density matrix by summing over bit strings of each weight.
Eigen::MatrixXcd embed_dicke(const Eigen::MatrixXcd& dicke_dm);

/// Dicke amplitudes of a symmetric tensor vector.
Eigen::VectorXcd dicke_amplitudes(const Eigen::VectorXcd& tensor, int n);

/// Reduced state of the photon at `keep` (0-based).
Eigen::Matrix2cd reduce_to(const Eigen::MatrixXcd& full, int n, int keep);

/// Reduced state on the photons listed in `keep` (sorted, 0-based).
Eigen::MatrixXcd reduce_to_subset(const Eigen::MatrixXcd& full, int n, const std::vector<int>& keep);

/// Applies the permutation photon i -> perm[i] to a tensor-space operator.
Eigen::MatrixXcd permute(const Eigen::MatrixXcd& full, int n, const std::vector<int>& perm);

/// Count-vector law from Tr[(M_{x1} x ... x M_{xn}) rho] over all m^n strings.
std::map<std::vector<int>, double> pnr_law(const Eigen::MatrixXcd& full, int n, const QubitPovm& povm);

/// Dicke amplitudes of v^{(x)n}.
Eigen::VectorXcd coherent_dicke(const Eigen::Vector2cd& v, int n);

/// Two parties holding na and nb photons; the joint state lives on the
/// product of the two Dicke spaces (Alice's index major).
struct Bipartite {
    int na = 1;
    int nb = 1;
    Eigen::MatrixXcd dm;
};

/// Probabilities of (both single and product +1, both single and product -1,
/// at least one side double-clicks) with each side measuring the given basis
/// pair (first vector means +1) on threshold detectors.
std::array<double, 3> threshold_signed_events(const Bipartite& state, const std::array<Eigen::Vector2cd, 2>& a,
                                              const std::array<Eigen::Vector2cd, 2>& b);

/// Mixture of one to three random pure joint states.
Bipartite random_bipartite(int na, int nb, CounterRng& rng);

/// <A (x) B> on the one-photon-per-side reduction, computed in tensor space.
double squashed_correlator(const Bipartite& state, const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b);

}  // namespace squash::oracle

#endif

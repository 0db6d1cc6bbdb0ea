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

#ifndef SQUASH_PASSIVE_H
#define SQUASH_PASSIVE_H

#include <array>
#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <Eigen/Dense>

#include "squash/detection.h"

namespace squash {

using Rational = boost::multiprecision::cpp_rational;

/// A passive beamsplitter network choosing uniformly among B >= 2 bases.
/// Each basis is an orthonormal pair of qubit vectors.
class PassiveConfig {
   public:
    static PassiveConfig from_bases(std::vector<std::array<Eigen::Vector2cd, 2>> bases);
    /// Z, X, Y and, for B = 4, a fourth basis on the XY equator at 45 degrees.
    static PassiveConfig standard(int num_bases);

    int num_bases() const { return static_cast<int>(bases_.size()); }
    const std::vector<std::array<Eigen::Vector2cd, 2>>& bases() const { return bases_; }

   private:
    explicit PassiveConfig(std::vector<std::array<Eigen::Vector2cd, 2>> bases) : bases_(std::move(bases)) {}
    std::vector<std::array<Eigen::Vector2cd, 2>> bases_;
};

/// The 2B-outcome POVM {(1/B)|b_W><b_W|}; outcome 2w + bit.
QubitPovm passive_povm(const PassiveConfig& config);

/// Probability that n photons, each routed uniformly at random to one of B
/// bases, occupy exactly a fixed set of b bases. Exact.
Rational multi_basis_detection_prob(int num_bases, int photons, int b);

/// Probability that basis A is selected when a uniformly random basis is
/// chosen among those that registered a click. Equals 1/B.
Rational basis_choice_probability(int num_bases, int photons);

struct PassiveSampleEstimate {
    double frequency = 0.0;
    double standard_error = 0.0;
    std::uint64_t samples = 0;
};

/// Direct simulation of the basis-choice rule, one counter stream per sample.
PassiveSampleEstimate sample_basis_choice(int num_bases, int photons, std::uint64_t samples, std::uint64_t seed);

}  // namespace squash

#endif

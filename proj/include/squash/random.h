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

#ifndef SQUASH_RANDOM_H
#define SQUASH_RANDOM_H

#include <cstdint>

#include <Eigen/Dense>

#include "squash/detection.h"
#include "squash/symstate.h"

namespace squash {

/// Counter-based generator: the stream for (seed, index) depends on nothing
/// else, so work split across threads draws the same numbers as a serial run.
/// Output is SplitMix64 over a Weyl sequence started at a hash of (seed, index).
class CounterRng {
   public:
    using result_type = std::uint64_t;

    CounterRng(std::uint64_t seed, std::uint64_t index);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return UINT64_MAX; }
    result_type operator()();

    /// Uniform on [0, 1) with 53 random bits.
    double uniform();
    /// Standard normal (Box-Muller).
    double normal();

   private:
    std::uint64_t state_;
};

Eigen::Vector2cd random_qubit_vector(CounterRng& rng);
QubitUnitary random_unitary(CounterRng& rng);

/// Mixture of 1..3 symmetrized products of random single-photon states.
SymmetricPhotonState random_symmetric_state(int photons, CounterRng& rng);

/// Random m-element POVM: M_i = S^{-1/2} G_i G_i^dagger S^{-1/2}, S = sum G_i G_i^dagger.
QubitPovm random_povm(int outcomes, CounterRng& rng);

}  // namespace squash

#endif

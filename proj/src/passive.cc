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

#include "squash/passive.h"

#include <cmath>

#include "squash/errors.h"
#include "squash/random.h"

namespace squash {

namespace {

constexpr double kOrthonormalTol = 1e-12;

void check_arguments(int num_bases, int photons) {
    if (num_bases < 2) {
        throw DomainError("passive: need at least two bases");
    }
    if (photons < 1) {
        throw DomainError("passive: need at least one photon");
    }
}

Rational rational_binomial(int n, int k) {
    boost::multiprecision::cpp_int c = 1;
    for (int i = 1; i <= k; ++i) {
        c = c * (n - k + i) / i;
    }
    return Rational(c);
}

}  // namespace

PassiveConfig PassiveConfig::from_bases(std::vector<std::array<Eigen::Vector2cd, 2>> bases) {
    if (bases.size() < 2) {
        throw DomainError("PassiveConfig: need at least two bases");
    }
    for (size_t w = 0; w < bases.size(); ++w) {
        const auto& pair = bases[w];
        const bool ok = std::abs(pair[0].squaredNorm() - 1.0) <= kOrthonormalTol &&
                        std::abs(pair[1].squaredNorm() - 1.0) <= kOrthonormalTol &&
                        std::abs(pair[0].dot(pair[1])) <= kOrthonormalTol;
        if (!ok) {
            throw DomainError("PassiveConfig: basis " + std::to_string(w) + " is not orthonormal");
        }
    }
    return PassiveConfig(std::move(bases));
}

PassiveConfig PassiveConfig::standard(int num_bases) {
    if (num_bases < 2 || num_bases > 4) {
        throw DomainError("PassiveConfig::standard: supports 2 to 4 bases");
    }
    std::vector<std::array<Eigen::Vector2cd, 2>> bases;
    for (PauliBasis b : {PauliBasis::Z, PauliBasis::X, PauliBasis::Y}) {
        bases.push_back({basis_state(b, 0), basis_state(b, 1)});
    }
    const Complex phase = std::polar(1.0, M_PI / 4.0);
    const double s = 1.0 / std::sqrt(2.0);
    bases.push_back({Eigen::Vector2cd(s, s * phase), Eigen::Vector2cd(s, -s * phase)});
    bases.resize(num_bases);
    return from_bases(std::move(bases));
}

QubitPovm passive_povm(const PassiveConfig& config) {
    const double weight = 1.0 / config.num_bases();
    std::vector<Eigen::Matrix2cd> elements;
    for (const auto& pair : config.bases()) {
        for (const auto& v : pair) {
            elements.push_back(weight * v * v.adjoint());
        }
    }
    return QubitPovm::from_elements(std::move(elements));
}

Rational multi_basis_detection_prob(int num_bases, int photons, int b) {
    check_arguments(num_bases, photons);
    if (b < 1 || b > num_bases) {
        throw DomainError("multi_basis_detection_prob: need 1 <= b <= B");
    }
    // P_c for c = 1..b, each the probability of hitting exactly a fixed
    // c-subset: all photons inside the subset minus the strict subsets.
    std::vector<Rational> p(b + 1, Rational(0));
    for (int c = 1; c <= b; ++c) {
        Rational inside(boost::multiprecision::pow(boost::multiprecision::cpp_int(c), photons),
                        boost::multiprecision::pow(boost::multiprecision::cpp_int(num_bases), photons));
        for (int d = 1; d < c; ++d) {
            inside -= rational_binomial(c, c - d) * p[c - d];
        }
        p[c] = inside;
    }
    return p[b];
}

Rational basis_choice_probability(int num_bases, int photons) {
    check_arguments(num_bases, photons);
    Rational total = 0;
    for (int b = 1; b <= num_bases; ++b) {
        total += Rational(1, b) * rational_binomial(num_bases - 1, b - 1) *
                 multi_basis_detection_prob(num_bases, photons, b);
    }
    return total;
}

PassiveSampleEstimate sample_basis_choice(int num_bases, int photons, std::uint64_t samples, std::uint64_t seed) {
    check_arguments(num_bases, photons);
    if (samples == 0) {
        throw DomainError("sample_basis_choice: need at least one sample");
    }
    std::uint64_t hits = 0;
    std::vector<int> occupied;
    for (std::uint64_t s = 0; s < samples; ++s) {
        CounterRng rng(seed, s);
        std::uint64_t mask = 0;
        for (int k = 0; k < photons; ++k) {
            mask |= std::uint64_t{1} << (rng() % static_cast<std::uint64_t>(num_bases));
        }
        occupied.clear();
        for (int w = 0; w < num_bases; ++w) {
            if (mask >> w & 1) {
                occupied.push_back(w);
            }
        }
        if (occupied[rng() % occupied.size()] == 0) {
            ++hits;
        }
    }
    PassiveSampleEstimate out;
    out.samples = samples;
    out.frequency = static_cast<double>(hits) / static_cast<double>(samples);
    const double p = 1.0 / num_bases;
    out.standard_error = std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
    return out;
}

}  // namespace squash

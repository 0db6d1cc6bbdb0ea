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

#include "squash/random.h"

#include <cmath>
#include <numbers>
#include <vector>

namespace squash {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

Complex complex_normal(CounterRng& rng) { return Complex(rng.normal(), rng.normal()); }

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t s = seed;
    std::uint64_t a = splitmix64(s);
    std::uint64_t t = index ^ a;
    state_ = splitmix64(t);
}

CounterRng::result_type CounterRng::operator()() { return splitmix64(state_); }

double CounterRng::uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

double CounterRng::normal() {
    double u1 = 1.0 - uniform();  // (0, 1]
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Eigen::Vector2cd random_qubit_vector(CounterRng& rng) {
    Eigen::Vector2cd v(complex_normal(rng), complex_normal(rng));
    return v / v.norm();
}

QubitUnitary random_unitary(CounterRng& rng) {
    Eigen::Matrix2cd g;
    g << complex_normal(rng), complex_normal(rng), complex_normal(rng), complex_normal(rng);
    Eigen::HouseholderQR<Eigen::Matrix2cd> qr(g);
    Eigen::Matrix2cd q = qr.householderQ();
    Eigen::Matrix2cd r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fix the phases of R's diagonal so Q is Haar distributed.
    for (int i = 0; i < 2; ++i) {
        Complex d = r(i, i);
        if (std::abs(d) > 0.0) {
            q.col(i) *= d / std::abs(d);
        }
    }
    return QubitUnitary::from_matrix(q);
}

SymmetricPhotonState random_symmetric_state(int photons, CounterRng& rng) {
    const int terms = 1 + static_cast<int>(rng() % 3);
    std::vector<SymmetricPhotonState> parts;
    std::vector<double> weights;
    double total = 0.0;
    for (int t = 0; t < terms; ++t) {
        std::vector<Eigen::Vector2cd> factors;
        for (int j = 0; j < photons; ++j) {
            factors.push_back(random_qubit_vector(rng));
        }
        parts.push_back(symmetrize(factors));
        double w = rng.uniform() + 1e-3;
        weights.push_back(w);
        total += w;
    }
    double acc = 0.0;
    for (int t = 0; t < terms; ++t) {
        weights[t] /= total;
        acc += weights[t];
    }
    weights.back() += 1.0 - acc;
    return SymmetricPhotonState::mixture(weights, parts);
}

QubitPovm random_povm(int outcomes, CounterRng& rng) {
    std::vector<Eigen::Matrix2cd> raw;
    Eigen::Matrix2cd sum = Eigen::Matrix2cd::Zero();
    for (int i = 0; i < outcomes; ++i) {
        Eigen::Matrix2cd g;
        g << complex_normal(rng), complex_normal(rng), complex_normal(rng), complex_normal(rng);
        raw.push_back(g * g.adjoint());
        sum += raw.back();
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> eig(sum);
    Eigen::Matrix2cd inv_sqrt = eig.operatorInverseSqrt();
    std::vector<Eigen::Matrix2cd> elements;
    for (const auto& a : raw) {
        Eigen::Matrix2cd e = inv_sqrt * a * inv_sqrt;
        elements.push_back(0.5 * (e + e.adjoint()));
    }
    return QubitPovm::from_elements(std::move(elements));
}

}  // namespace squash

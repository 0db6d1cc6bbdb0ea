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

#include "squash/detection.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "squash/errors.h"

namespace squash {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

void check_same_size(const OutcomeDistribution& a, const OutcomeDistribution& b) {
    if (a.probabilities.size() != b.probabilities.size()) {
        throw DomainError("compare_situations: POVMs have different numbers of outcomes");
    }
}

// Tr(M q), summed in the same order as trace_out_photon so that n = 1
// reproduces it bit for bit.
double trace_product(const Eigen::Matrix2cd& m, const Eigen::Matrix2cd& q) {
    Complex t(0.0);
    for (int c = 0; c < 2; ++c) {
        for (int d = 0; d < 2; ++d) {
            t += m(d, c) * q(c, d);
        }
    }
    return t.real();
}

}  // namespace

Eigen::Vector2cd basis_state(PauliBasis basis, int bit) {
    if (bit != 0 && bit != 1) {
        throw DomainError("basis_state: bit must be 0 or 1");
    }
    const double sign = bit == 0 ? 1.0 : -1.0;
    switch (basis) {
        case PauliBasis::Z:
            return bit == 0 ? Eigen::Vector2cd(1.0, 0.0) : Eigen::Vector2cd(0.0, 1.0);
        case PauliBasis::X:
            return Eigen::Vector2cd(kInvSqrt2, sign * kInvSqrt2);
        case PauliBasis::Y:
            return Eigen::Vector2cd(kInvSqrt2, Complex(0.0, sign * kInvSqrt2));
    }
    throw DomainError("basis_state: unknown basis");
}

Eigen::Matrix2cd pauli(PauliBasis basis) {
    Eigen::Vector2cd zero = basis_state(basis, 0);
    Eigen::Vector2cd one = basis_state(basis, 1);
    return zero * zero.adjoint() - one * one.adjoint();
}

char basis_name(PauliBasis basis) {
    switch (basis) {
        case PauliBasis::X:
            return 'X';
        case PauliBasis::Y:
            return 'Y';
        case PauliBasis::Z:
            return 'Z';
    }
    return '?';
}

QubitPovm QubitPovm::from_elements(std::vector<Eigen::Matrix2cd> elements) {
    if (elements.size() < 2) {
        throw InvalidStateError("QubitPovm: need at least two elements");
    }
    Eigen::Matrix2cd sum = Eigen::Matrix2cd::Zero();
    for (size_t i = 0; i < elements.size(); ++i) {
        const auto& e = elements[i];
        if (!e.allFinite() || (e - e.adjoint()).cwiseAbs().maxCoeff() > kPovmTol) {
            throw InvalidStateError("QubitPovm: element " + std::to_string(i) + " is not Hermitian");
        }
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> eig(e, Eigen::EigenvaluesOnly);
        if (eig.eigenvalues().minCoeff() < -kPovmTol) {
            throw InvalidStateError("QubitPovm: element " + std::to_string(i) + " is not positive semidefinite");
        }
        sum += e;
    }
    if ((sum - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() > kPovmTol) {
        throw InvalidStateError("QubitPovm: elements do not sum to identity");
    }
    return QubitPovm(std::move(elements));
}

QubitPovm QubitPovm::projective(const QubitUnitary& u) {
    const Eigen::Matrix2cd& m = u.matrix();
    // U^dagger |i><i| U = |row_i^*><row_i^*|.
    std::vector<Eigen::Matrix2cd> elements;
    for (int i = 0; i < 2; ++i) {
        Eigen::Vector2cd v = m.row(i).adjoint();
        elements.push_back(v * v.adjoint());
    }
    return from_elements(std::move(elements));
}

QubitPovm QubitPovm::in_basis(PauliBasis basis) {
    std::vector<Eigen::Matrix2cd> elements;
    for (int bit = 0; bit < 2; ++bit) {
        Eigen::Vector2cd v = basis_state(basis, bit);
        elements.push_back(v * v.adjoint());
    }
    return from_elements(std::move(elements));
}

PnrDistribution::PnrDistribution(int photons, int outcomes, std::vector<PnrEntry> entries)
    : photons_(photons), outcomes_(outcomes), entries_(std::move(entries)) {}

double PnrDistribution::probability(const std::vector<int>& counts) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), counts,
                               [](const PnrEntry& e, const std::vector<int>& c) { return e.counts < c; });
    if (it != entries_.end() && it->counts == counts) {
        return it->probability;
    }
    return 0.0;
}

double PnrDistribution::total() const {
    double t = 0.0;
    for (const auto& e : entries_) {
        t += e.probability;
    }
    return t;
}

double OutcomeDistribution::total() const {
    double t = 0.0;
    for (double p : probabilities) {
        t += p;
    }
    return t;
}

std::uint64_t count_vector_count(int n, int m) {
    double c = binomial(n + m - 1, m - 1);
    if (c > 1e18) {
        return UINT64_MAX;
    }
    return static_cast<std::uint64_t>(c);
}

PnrDistribution pnr_distribution(const SymmetricPhotonState& state, const QubitPovm& povm) {
    const int n = state.photons();
    const int m = povm.size();
    if (count_vector_count(n, m) > kMaxCountVectors) {
        throw CapacityError("pnr_distribution: " + std::to_string(n) + " photons over " + std::to_string(m) +
                            " outcomes exceeds the count-vector limit");
    }
    // Collapsing one photon at a time: the operators for different orderings of
    // the same counts coincide by exchange symmetry, so summing over the m
    // predecessors accumulates the multinomial weight automatically.
    std::map<std::vector<int>, Eigen::MatrixXcd> level;
    level.emplace(std::vector<int>(m, 0), state.density_matrix());
    for (int step = 0; step < n; ++step) {
        std::map<std::vector<int>, Eigen::MatrixXcd> next;
        for (const auto& [counts, op] : level) {
            for (int i = 0; i < m; ++i) {
                std::vector<int> key = counts;
                ++key[i];
                Eigen::MatrixXcd reduced = trace_out_photon(op, povm.element(i));
                auto it = next.find(key);
                if (it == next.end()) {
                    next.emplace(std::move(key), std::move(reduced));
                } else {
                    it->second += reduced;
                }
            }
        }
        level = std::move(next);
    }
    std::vector<PnrEntry> entries;
    entries.reserve(level.size());
    for (const auto& [counts, op] : level) {
        entries.push_back(PnrEntry{counts, op(0, 0).real()});
    }
    return PnrDistribution(n, m, std::move(entries));
}

OutcomeDistribution situation1_distribution(const SymmetricPhotonState& state, const QubitPovm& povm) {
    const Eigen::Matrix2cd& q = squash(state).density_matrix();
    OutcomeDistribution out;
    for (const auto& e : povm.elements()) {
        out.probabilities.push_back(trace_product(e, q));
    }
    return out;
}

OutcomeDistribution situation2_distribution(const PnrDistribution& pnr) {
    OutcomeDistribution out;
    out.probabilities.assign(pnr.outcomes(), 0.0);
    const double n = pnr.photons();
    for (const auto& e : pnr.entries()) {
        for (int i = 0; i < pnr.outcomes(); ++i) {
            out.probabilities[i] += (e.counts[i] / n) * e.probability;
        }
    }
    return out;
}

OutcomeDistribution situation2_distribution(const SymmetricPhotonState& state, const QubitPovm& povm) {
    return situation2_distribution(pnr_distribution(state, povm));
}

ThresholdDistribution situation4_distribution(const PnrDistribution& pnr) {
    if (pnr.outcomes() != 2) {
        throw UnsupportedError("situation4_distribution: threshold events are defined for two detectors only, got " +
                               std::to_string(pnr.outcomes()));
    }
    const int n = pnr.photons();
    ThresholdDistribution out;
    out.bit0 = pnr.probability({n, 0});
    out.bit1 = pnr.probability({0, n});
    out.double_click = 1.0 - out.bit0 - out.bit1;
    if (n == 1) {
        out.double_click = 0.0;
    }
    return out;
}

ThresholdDistribution situation4_distribution(const SymmetricPhotonState& state, const QubitPovm& povm) {
    if (povm.size() != 2) {
        throw UnsupportedError("situation4_distribution: threshold events are defined for two detectors only, got " +
                               std::to_string(povm.size()));
    }
    return situation4_distribution(pnr_distribution(state, povm));
}

Theorem1Report compare_situations(const SymmetricPhotonState& state, const QubitPovm& squash_povm,
                                  const QubitPovm& pnr_povm, double tol) {
    if (!(tol > 0.0)) {
        throw DomainError("verify_theorem1: tolerance must be positive");
    }
    Theorem1Report report;
    report.squashed = situation1_distribution(state, squash_povm);
    report.post_processed = situation2_distribution(state, pnr_povm);
    check_same_size(report.squashed, report.post_processed);
    for (size_t i = 0; i < report.squashed.probabilities.size(); ++i) {
        report.max_abs_diff = std::max(
            report.max_abs_diff, std::abs(report.squashed.probabilities[i] - report.post_processed.probabilities[i]));
    }
    report.pass = report.max_abs_diff <= tol;
    return report;
}

Theorem1Report verify_theorem1(const SymmetricPhotonState& state, const QubitPovm& povm, double tol) {
    return compare_situations(state, povm, povm, tol);
}

}  // namespace squash

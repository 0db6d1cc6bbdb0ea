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
#include <thread>

#include "squash/errors.h"
#include "squash/random.h"

namespace squash {

namespace {

constexpr double kSigmaLimit = 5.0;
constexpr int kDrawKinds = 7;  // untouched, then (W, i) for W in X, Y, Z and i in 1, 2

AttackDraw draw_from_index(int k) {
    if (k == 0) {
        return AttackDraw{};
    }
    return AttackDraw{(k - 1) % 2 + 1, static_cast<PauliBasis>((k - 1) / 2)};
}

double draw_weight(int k, const CopyAttack& attack) {
    if (k == 0) {
        return 1.0 - attack.p1 - attack.p2;
    }
    return (draw_from_index(k).copies == 1 ? attack.p1 : attack.p2) / 3.0;
}

// Situation-4 distributions for every (Alice basis, bit, draw).
using OutcomeTable = std::array<std::array<std::array<ThresholdDistribution, kDrawKinds>, 2>, 3>;

OutcomeTable build_table() {
    OutcomeTable table;
    for (int b = 0; b < 3; ++b) {
        const auto basis = static_cast<PauliBasis>(b);
        const QubitPovm povm = QubitPovm::in_basis(basis);
        for (int bit = 0; bit < 2; ++bit) {
            for (int k = 0; k < kDrawKinds; ++k) {
                table[b][bit][k] =
                    situation4_distribution(attack_output_state(basis_state(basis, bit), draw_from_index(k)), povm);
            }
        }
    }
    return table;
}

void add(EventTally& into, const EventTally& from) {
    into.correct_single += from.correct_single;
    into.error_single += from.error_single;
    into.double_click += from.double_click;
}

void run_range(const SessionConfig& config, const CopyAttack& attack, const OutcomeTable& table,
               const std::vector<PauliBasis>& bases, std::uint64_t begin, std::uint64_t end, SessionTallies& out) {
    for (std::uint64_t i = begin; i < end; ++i) {
        CounterRng rng(config.seed, i);
        const PauliBasis basis = bases[rng() % bases.size()];
        const int bit = static_cast<int>(rng() & 1);
        const double u = rng.uniform();
        int k = 0;
        if (u < attack.p1 + attack.p2) {
            const int copies = u < attack.p1 ? 1 : 2;
            k = 1 + 2 * static_cast<int>(rng() % 3) + (copies - 1);
        }
        const bool is_key = basis == config.key_basis && rng.uniform() < config.key_fraction;
        const ThresholdDistribution& d = table[static_cast<int>(basis)][bit][k];
        const double v = rng.uniform();
        EventTally event;
        if (v < d.bit0) {
            (bit == 0 ? event.correct_single : event.error_single) = 1;
        } else if (v < d.bit0 + d.bit1) {
            (bit == 1 ? event.correct_single : event.error_single) = 1;
        } else {
            event.double_click = 1;
        }
        if (is_key) {
            add(out.key_events, event);
            out.key.single += event.correct_single + event.error_single;
            out.key.double_click += event.double_click;
        } else {
            add(out.test[static_cast<int>(basis)], event);
        }
    }
}

FrequencyCheck check(std::string label, double count, double total, double p) {
    FrequencyCheck c;
    c.label = std::move(label);
    c.observed = total > 0 ? count / total : 0.0;
    c.expected = p;
    c.sigma = total > 0 ? std::sqrt(p * (1.0 - p) / total) : 0.0;
    c.within = std::abs(c.observed - c.expected) <= kSigmaLimit * c.sigma + 1e-12;
    return c;
}

}  // namespace

void CopyAttack::validate() const {
    if (!(p1 >= 0.0) || !(p2 >= 0.0) || !(p1 + p2 <= 1.0 + 1e-12)) {
        throw DomainError("CopyAttack: need p1, p2 >= 0 and p1 + p2 <= 1");
    }
}

SymmetricPhotonState attack_output_state(const Eigen::Vector2cd& input, const AttackDraw& draw) {
    if (draw.copies == 0) {
        return SymmetricPhotonState::pure(input);
    }
    if (draw.copies < 0 || draw.copies > 2) {
        throw DomainError("attack_output_state: copies must be 0, 1 or 2");
    }
    const Eigen::Vector2cd zero = basis_state(draw.basis, 0);
    const Eigen::Vector2cd one = basis_state(draw.basis, 1);
    const double w0 = std::norm(zero.dot(input));
    const double w1 = std::norm(one.dot(input));
    const std::vector<Eigen::Vector2cd> zeros(draw.copies, zero);
    const std::vector<Eigen::Vector2cd> ones(draw.copies, one);
    const std::array<SymmetricPhotonState, 2> parts{symmetrize(zeros), symmetrize(ones)};
    const std::array<double, 2> weights{w0 / (w0 + w1), w1 / (w0 + w1)};
    return SymmetricPhotonState::mixture(weights, parts);
}

void SessionConfig::validate() const {
    if (num_signals == 0) {
        throw DomainError("SessionConfig: num_signals must be positive");
    }
    if (!(key_fraction >= 0.0 && key_fraction <= 1.0)) {
        throw DomainError("SessionConfig: key_fraction must lie in [0, 1]");
    }
    if (threads < 1) {
        throw DomainError("SessionConfig: threads must be positive");
    }
    if (protocol == Protocol::kBB84 && key_basis == PauliBasis::Y) {
        throw DomainError("SessionConfig: BB84 uses the Z and X bases only");
    }
}

std::vector<PauliBasis> SessionConfig::bases() const {
    if (protocol == Protocol::kBB84) {
        return {PauliBasis::Z, PauliBasis::X};
    }
    return {PauliBasis::X, PauliBasis::Y, PauliBasis::Z};
}

BasisExpectation expected_basis_statistics(PauliBasis basis, const CopyAttack& attack) {
    attack.validate();
    const QubitPovm povm = QubitPovm::in_basis(basis);
    BasisExpectation out;
    for (int bit = 0; bit < 2; ++bit) {
        for (int k = 0; k < kDrawKinds; ++k) {
            const double w = 0.5 * draw_weight(k, attack);
            const ThresholdDistribution d =
                situation4_distribution(attack_output_state(basis_state(basis, bit), draw_from_index(k)), povm);
            out.correct_single += w * (bit == 0 ? d.bit0 : d.bit1);
            out.error_single += w * (bit == 0 ? d.bit1 : d.bit0);
            out.double_click += w * d.double_click;
        }
    }
    return out;
}

SessionTallies simulate_session(const SessionConfig& config, const CopyAttack& attack) {
    config.validate();
    attack.validate();
    const OutcomeTable table = build_table();
    const std::vector<PauliBasis> bases = config.bases();
    const std::uint64_t workers = std::min<std::uint64_t>(config.threads, config.num_signals);
    std::vector<SessionTallies> partial(workers);
    std::vector<std::thread> pool;
    for (std::uint64_t w = 0; w < workers; ++w) {
        const std::uint64_t begin = config.num_signals * w / workers;
        const std::uint64_t end = config.num_signals * (w + 1) / workers;
        if (workers == 1) {
            run_range(config, attack, table, bases, begin, end, partial[w]);
        } else {
            pool.emplace_back(
                [&, begin, end, w] { run_range(config, attack, table, bases, begin, end, partial[w]); });
        }
    }
    for (auto& t : pool) {
        t.join();
    }
    // Counts are integers below 2^53, so the reduction is exact.
    SessionTallies out;
    for (const auto& p : partial) {
        for (int b = 0; b < 3; ++b) {
            add(out.test[b], p.test[b]);
        }
        add(out.key_events, p.key_events);
        out.key.single += p.key.single;
        out.key.double_click += p.key.double_click;
    }
    return out;
}

EmpiricalReport empirical_report(const SessionTallies& tallies, const SessionConfig& config,
                                 const CopyAttack& attack) {
    config.validate();
    EmpiricalReport report;
    double n_total = 0.0;
    double err_total = 0.0;
    double dc_total = 0.0;
    double exp_err = 0.0;
    double exp_dc = 0.0;
    for (PauliBasis basis : config.bases()) {
        const int b = static_cast<int>(basis);
        const EventTally& t = tallies.test[b];
        const double n = t.total();
        const BasisExpectation e = expected_basis_statistics(basis, attack);
        const std::string name(1, basis_name(basis));
        report.checks.push_back(check(name + ".correct_single", t.correct_single, n, e.correct_single));
        report.checks.push_back(check(name + ".error_single", t.error_single, n, e.error_single));
        report.checks.push_back(check(name + ".double_click", t.double_click, n, e.double_click));
        if (n > 0) {
            report.error_intervals[b] = test_error_bounds(t);
            report.squashed_error[b] = (t.error_single + 0.5 * t.double_click) / n;
        }
        n_total += n;
        err_total += t.error_single;
        dc_total += t.double_click;
        exp_err += n * e.error_single;
        exp_dc += n * e.double_click;
    }
    for (const auto& c : report.checks) {
        report.all_within = report.all_within && c.within;
    }
    if (n_total <= 0) {
        throw DomainError("empirical_report: no test signals");
    }
    report.observed = ObservedRates{err_total / n_total, dc_total / n_total};
    report.expected = ObservedRates{exp_err / n_total, exp_dc / n_total};
    auto rate_of = [&](const ObservedRates& r) {
        return config.protocol == Protocol::kSixState ? sixstate_rate_numeric(r).rate : bb84_rate_discard(r);
    };
    report.rate = rate_of(report.observed);
    report.expected_rate = rate_of(report.expected);
    return report;
}

}  // namespace squash

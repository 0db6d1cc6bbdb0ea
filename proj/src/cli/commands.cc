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

#include "squash/cli/commands.h"

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "squash/cli/csv.h"
#include "squash/decoy.h"
#include "squash/detection.h"
#include "squash/errors.h"
#include "squash/keyrates.h"
#include "squash/montecarlo.h"
#include "squash/passive.h"
#include "squash/random.h"
#include "squash/statbounds.h"

namespace squash::cli {

namespace {

using nlohmann::json;

class UsageError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

std::string fmt(double x) { return format_number(x); }

// ---------------------------------------------------------------- theorem 1

struct Theorem1Options {
    int trials = 500;
    int n_max = 6;
    int m_max = 4;
    double tol = 1e-10;
    std::uint64_t seed = 42;
    std::string out = "-";
    std::string failure_out = "theorem1_failure.json";
    std::string replay;
    bool corrupt_povm = false;
};

json matrix_json(const Eigen::MatrixXcd& m) {
    json re = json::array();
    json im = json::array();
    for (int r = 0; r < m.rows(); ++r) {
        json rr = json::array();
        json ii = json::array();
        for (int c = 0; c < m.cols(); ++c) {
            rr.push_back(m(r, c).real());
            ii.push_back(m(r, c).imag());
        }
        re.push_back(rr);
        im.push_back(ii);
    }
    return json{{"re", re}, {"im", im}};
}

Eigen::MatrixXcd matrix_from_json(const json& j) {
    const auto& re = j.at("re");
    const auto& im = j.at("im");
    const int rows = static_cast<int>(re.size());
    const int cols = rows ? static_cast<int>(re.at(0).size()) : 0;
    Eigen::MatrixXcd m(rows, cols);
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            m(r, c) = Complex(re.at(r).at(c).get<double>(), im.at(r).at(c).get<double>());
        }
    }
    return m;
}

json povm_json(const QubitPovm& povm) {
    json elements = json::array();
    for (const auto& e : povm.elements()) {
        elements.push_back(matrix_json(e));
    }
    return elements;
}

QubitPovm povm_from_json(const json& j) {
    std::vector<Eigen::Matrix2cd> elements;
    for (const auto& e : j) {
        elements.push_back(matrix_from_json(e));
    }
    return QubitPovm::from_elements(std::move(elements));
}

// Swapping two outcomes gives a valid but wrong POVM for the PNR side.
QubitPovm corrupted(const QubitPovm& povm) {
    auto elements = povm.elements();
    std::swap(elements[0], elements[1]);
    return QubitPovm::from_elements(std::move(elements));
}

int replay_theorem1(const Theorem1Options& opt, std::ostream& err) {
    std::ifstream in(opt.replay);
    if (!in) {
        throw IoError("cannot read " + opt.replay);
    }
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw UsageError("replay file " + opt.replay + ": " + e.what());
    }
    const auto state = SymmetricPhotonState::from_density_matrix(matrix_from_json(j.at("state")));
    const QubitPovm povm = povm_from_json(j.at("povm"));
    const QubitPovm pnr = j.contains("pnr_povm") ? povm_from_json(j.at("pnr_povm")) : povm;
    const double tol = j.value("tol", opt.tol);
    const Theorem1Report r = compare_situations(state, povm, pnr, tol);
    err << "replay trial " << j.value("trial", -1) << ": max_abs_diff " << fmt(r.max_abs_diff)
        << (r.pass ? " PASS" : " FAIL") << '\n';
    return r.pass ? kExitOk : kExitPropertyFailure;
}

int cmd_verify_theorem1(const Theorem1Options& opt, std::ostream& out, std::ostream& err) {
    if (!opt.replay.empty()) {
        return replay_theorem1(opt, err);
    }
    if (opt.trials <= 0 || opt.n_max < 1 || opt.m_max < 2 || !(opt.tol >= 0.0)) {
        throw UsageError("verify-theorem1: need trials > 0, n-max >= 1, m-max >= 2, tol >= 0");
    }
    CsvWriter csv(opt.out, out);
    csv.row({"trial", "photons", "outcomes", "max_abs_diff", "pass"});
    int failures = 0;
    double worst = 0.0;
    for (int t = 0; t < opt.trials; ++t) {
        CounterRng rng(opt.seed, static_cast<std::uint64_t>(t));
        const int n = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(opt.n_max));
        const int m = 2 + static_cast<int>(rng() % static_cast<std::uint64_t>(opt.m_max - 1));
        const SymmetricPhotonState state = random_symmetric_state(n, rng);
        const QubitPovm povm = random_povm(m, rng);
        const QubitPovm pnr = opt.corrupt_povm ? corrupted(povm) : povm;
        const Theorem1Report r = compare_situations(state, povm, pnr, opt.tol);
        csv.row({std::to_string(t), std::to_string(n), std::to_string(m), fmt(r.max_abs_diff), r.pass ? "1" : "0"});
        worst = std::max(worst, r.max_abs_diff);
        if (!r.pass) {
            if (failures == 0) {
                json dump{{"trial", t},
                          {"seed", opt.seed},
                          {"tol", opt.tol},
                          {"photons", n},
                          {"state", matrix_json(state.density_matrix())},
                          {"povm", povm_json(povm)},
                          {"max_abs_diff", r.max_abs_diff}};
                if (opt.corrupt_povm) {
                    dump["pnr_povm"] = povm_json(pnr);
                }
                std::ofstream f(opt.failure_out);
                if (!f) {
                    throw IoError("cannot write " + opt.failure_out);
                }
                f << dump.dump(2) << '\n';
                err << "first failing instance written to " << opt.failure_out << '\n';
            }
            ++failures;
        }
    }
    csv.close();
    err << "verify-theorem1: " << opt.trials - failures << "/" << opt.trials << " passed, worst max_abs_diff "
        << fmt(worst) << '\n';
    return failures == 0 ? kExitOk : kExitPropertyFailure;
}

// ---------------------------------------------------------------- fig3

struct Fig3Options {
    std::vector<double> eps{0.0, 0.01, 0.02, 0.05};
    double delta_max = 0.2;
    int delta_points = 41;
    std::string out = "-";
};

int cmd_fig3(const Fig3Options& opt, std::ostream& out) {
    if (opt.eps.empty() || opt.delta_points < 1 || !(opt.delta_max >= 0.0)) {
        throw UsageError("fig3: need at least one eps, delta-points >= 1, delta-max >= 0");
    }
    for (double e : opt.eps) {
        if (!(e >= 0.0) || !(e + opt.delta_max < 1.0)) {
            throw UsageError("fig3: every eps + delta-max must lie in [0, 1)");
        }
    }
    CsvWriter csv(opt.out, out);
    csv.row({"eps", "delta", "R_eq11", "R_eq12", "R_eq13"});
    for (double e : opt.eps) {
        for (int i = 0; i < opt.delta_points; ++i) {
            const double d = opt.delta_points == 1 ? 0.0 : opt.delta_max * i / (opt.delta_points - 1);
            const ObservedRates r{e, d};
            csv.row({fmt(e), fmt(d), fmt(bb84_rate_discard(r)), fmt(bb84_rate_random_assign(r)),
                     fmt(bb84_rate_statpreserve_discard(r))});
        }
    }
    csv.close();
    return kExitOk;
}

// ---------------------------------------------------------------- fig4

struct Fig4Options {
    std::vector<double> eps{0.01};
    std::vector<double> delta{0.01};
    double distance_max = 200.0;
    double distance_step = 10.0;
    double alpha = 0.21;
    double eta_bob = 0.045;
    double mu_lo = 1e-4;
    double mu_hi = 2.0;
    int threads = 1;
    std::string out = "-";
};

struct Fig4Row {
    double mu_star = 0.0;
    double universal = 0.0;
    double stat_preserving = 0.0;
    bool unimodal = true;
};

int cmd_fig4(const Fig4Options& opt, std::ostream& out, std::ostream& err) {
    if (opt.eps.empty() || opt.eps.size() != opt.delta.size()) {
        throw UsageError("fig4: eps and delta lists must be nonempty and of equal length");
    }
    if (!(opt.distance_step > 0.0) || !(opt.distance_max >= 0.0) || opt.threads < 1) {
        throw UsageError("fig4: need distance-step > 0, distance-max >= 0, threads >= 1");
    }
    std::vector<double> distances;
    for (int i = 0; i * opt.distance_step <= opt.distance_max + 1e-9; ++i) {
        distances.push_back(i * opt.distance_step);
    }
    CsvWriter csv(opt.out, out);
    csv.row({"eps", "delta", "distance_km", "mu_star", "R_universal", "R_stat_preserving"});
    for (size_t s = 0; s < opt.eps.size(); ++s) {
        DecoyChannelModel base;
        base.alpha_db_per_km = opt.alpha;
        base.eta_bob = opt.eta_bob;
        base.eps = opt.eps[s];
        base.delta = opt.delta[s];
        base.validate();
        std::vector<Fig4Row> rows(distances.size());
        auto work = [&](size_t begin, size_t step) {
            for (size_t i = begin; i < distances.size(); i += step) {
                DecoyChannelModel model = base;
                model.length_km = distances[i];
                const MuOptimum u = optimize_mu(model, DecoyVariant::kUniversal, opt.mu_lo, opt.mu_hi);
                const MuOptimum p = optimize_mu(model, DecoyVariant::kStatPreserving, opt.mu_lo, opt.mu_hi);
                rows[i] = Fig4Row{u.mu, u.rate, p.rate, u.unimodal && p.unimodal};
            }
        };
        std::vector<std::thread> pool;
        for (int t = 1; t < opt.threads; ++t) {
            pool.emplace_back(work, static_cast<size_t>(t), static_cast<size_t>(opt.threads));
        }
        work(0, static_cast<size_t>(opt.threads));
        for (auto& t : pool) {
            t.join();
        }
        for (size_t i = 0; i < distances.size(); ++i) {
            if (!rows[i].unimodal) {
                err << "fig4: rate is not unimodal in mu at eps=" << fmt(base.eps) << " delta=" << fmt(base.delta)
                    << " distance=" << fmt(distances[i]) << '\n';
            }
            csv.row({fmt(base.eps), fmt(base.delta), fmt(distances[i]), fmt(rows[i].mu_star), fmt(rows[i].universal),
                     fmt(rows[i].stat_preserving)});
        }
    }
    csv.close();
    return kExitOk;
}

// ---------------------------------------------------------------- bounds

struct BoundsOptions {
    std::string input;
    std::string mode = "qkd";
    std::string key_label = "key";
    std::string key_basis = "Z";
    std::string out = "-";
};

const TallyRow& find_row(const std::vector<TallyRow>& rows, const std::string& label, const std::string& source) {
    for (const auto& r : rows) {
        if (r.label == label) {
            return r;
        }
    }
    throw ParseError(source, 0, "missing row '" + label + "'");
}

void interval_row(CsvWriter& csv, const std::string& label, const std::string& quantity, const RateInterval& r) {
    csv.row({label, quantity, fmt(r.lo), fmt(r.hi)});
}

int cmd_bounds(const BoundsOptions& opt, std::ostream& out) {
    const std::vector<TallyRow> rows = read_tally_csv(opt.input);
    CsvWriter csv(opt.out, out);
    csv.row({"label", "quantity", "lo", "hi"});
    auto wrap = [&](const TallyRow& r, auto&& f) {
        try {
            return f();
        } catch (const std::invalid_argument& e) {
            throw ParseError(opt.input, r.line, e.what());
        } catch (const std::domain_error& e) {
            throw ParseError(opt.input, r.line, e.what());
        }
    };
    if (opt.mode == "qkd") {
        std::optional<KeyTally> key;
        for (const auto& r : rows) {
            if (r.label == opt.key_label) {
                key = KeyTally{r.a + r.b, r.c};
            }
        }
        for (const auto& r : rows) {
            if (r.label == opt.key_label) {
                continue;
            }
            const EventTally t{r.a, r.b, r.c};
            const RateInterval test = wrap(r, [&] { return test_error_bounds(t); });
            interval_row(csv, r.label, "test_error", test);
            if (r.label == opt.key_basis) {
                const double e = wrap(r, [&] { return key_error_same_basis(t); });
                csv.row({r.label, "key_error_same_basis", fmt(e), fmt(e)});
            } else if (key) {
                const KeyErrorBounds k = wrap(r, [&] { return key_error_bounds_other_basis(test, *key); });
                interval_row(csv, r.label, "key_error", k.bounds);
            }
        }
    } else if (opt.mode == "tomography") {
        std::array<RateInterval, 3> stokes;
        const char* labels[3] = {"X", "Y", "Z"};
        for (int i = 0; i < 3; ++i) {
            const TallyRow& r = find_row(rows, labels[i], opt.input);
            stokes[i] = wrap(r, [&] { return stokes_bounds(SignedTally{r.a, r.b, r.c}); });
            interval_row(csv, labels[i], "stokes", stokes[i]);
        }
        const TomographyStateSet set = tomography_state_set(stokes);
        csv.row({"state_set", "intersects_state_space", set.intersects_state_space ? "1" : "0",
                 set.intersects_state_space ? "1" : "0"});
        csv.row({"state_set", "min_bloch_norm", fmt(set.min_bloch_norm), fmt(set.min_bloch_norm)});
    } else if (opt.mode == "chsh") {
        const char* labels[4] = {"A1B1", "A1B2", "A2B1", "A2B2"};
        std::array<RateInterval, 4> e;
        for (int i = 0; i < 4; ++i) {
            const TallyRow& r = find_row(rows, labels[i], opt.input);
            e[i] = wrap(r, [&] { return chsh_correlator_bounds(SignedTally{r.a, r.b, r.c}); });
            interval_row(csv, labels[i], "correlator", e[i]);
        }
        const RateInterval chi = chsh_violation_bounds(e[0], e[1], e[2], e[3]);
        interval_row(csv, "chsh", "chi", chi);
        const double f = fidelity_lower_bound(chi.lo);
        csv.row({"chsh", "fidelity_lower_bound", fmt(f), fmt(f)});
    } else {
        throw UsageError("bounds: unknown mode " + opt.mode);
    }
    csv.close();
    return kExitOk;
}

// ---------------------------------------------------------------- montecarlo

struct MonteCarloOptions {
    std::string protocol = "six-state";
    std::uint64_t signals = 1'000'000;
    double p1 = 0.0;
    double p2 = 0.0;
    double key_fraction = 0.5;
    std::uint64_t seed = 1;
    int threads = 1;
    std::string tallies;
    std::string report = "-";
};

int cmd_montecarlo(const MonteCarloOptions& opt, std::ostream& out) {
    SessionConfig config;
    config.protocol = opt.protocol == "bb84" ? Protocol::kBB84 : Protocol::kSixState;
    config.num_signals = opt.signals;
    config.key_fraction = opt.key_fraction;
    config.seed = opt.seed;
    config.threads = opt.threads;
    const CopyAttack attack{opt.p1, opt.p2};
    config.validate();
    attack.validate();
    const SessionTallies tallies = simulate_session(config, attack);
    const EmpiricalReport report = empirical_report(tallies, config, attack);

    if (!opt.tallies.empty()) {
        CsvWriter csv(opt.tallies, out);
        csv.row({"basis_label", "correct_single", "error_single", "double"});
        for (PauliBasis b : config.bases()) {
            const EventTally& t = tallies.test[static_cast<int>(b)];
            csv.row({std::string(1, basis_name(b)), fmt(t.correct_single), fmt(t.error_single), fmt(t.double_click)});
        }
        csv.row({"key", fmt(tallies.key_events.correct_single), fmt(tallies.key_events.error_single),
                 fmt(tallies.key_events.double_click)});
        csv.close();
    }

    CsvWriter csv(opt.report, out);
    csv.row({"quantity", "observed", "expected", "sigma", "flag"});
    for (const auto& c : report.checks) {
        csv.row({c.label, fmt(c.observed), fmt(c.expected), fmt(c.sigma), c.within ? "ok" : "deviation"});
    }
    for (PauliBasis b : config.bases()) {
        const int i = static_cast<int>(b);
        const std::string name(1, basis_name(b));
        csv.row({name + ".error_interval_lo", fmt(report.error_intervals[i].lo), "", "", ""});
        csv.row({name + ".error_interval_hi", fmt(report.error_intervals[i].hi), "", "", ""});
        csv.row({name + ".squashed_error", fmt(report.squashed_error[i]), "", "", ""});
    }
    csv.row({"eps", fmt(report.observed.eps), fmt(report.expected.eps), "", ""});
    csv.row({"delta", fmt(report.observed.delta), fmt(report.expected.delta), "", ""});
    csv.row({"rate_per_detected", fmt(report.rate), fmt(report.expected_rate), "",
             report.rate > 0.0 ? "ok" : "no_key"});
    csv.close();
    return kExitOk;
}

// ---------------------------------------------------------------- passive

struct PassiveOptions {
    std::vector<int> bases{2, 3, 4};
    std::vector<int> photons{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    std::uint64_t samples = 0;
    std::uint64_t seed = 7;
    std::string out = "-";
};

int cmd_passive(const PassiveOptions& opt, std::ostream& out) {
    for (int b : opt.bases) {
        if (b < 2) {
            throw UsageError("passive: B must be at least 2");
        }
    }
    for (int n : opt.photons) {
        if (n < 1) {
            throw UsageError("passive: n must be at least 1");
        }
    }
    CsvWriter csv(opt.out, out);
    std::vector<std::string> header{"B", "n", "P_A", "exact_1_over_B"};
    if (opt.samples > 0) {
        header.insert(header.end(), {"mc_frequency", "mc_sigma", "mc_within_5sigma"});
    }
    csv.row(header);
    bool all = true;
    for (int b : opt.bases) {
        for (int n : opt.photons) {
            const Rational p = basis_choice_probability(b, n);
            const bool exact = p == Rational(1, b);
            std::vector<std::string> row{std::to_string(b), std::to_string(n), p.str(), exact ? "1" : "0"};
            all = all && exact;
            if (opt.samples > 0) {
                const PassiveSampleEstimate s = sample_basis_choice(b, n, opt.samples, opt.seed);
                const bool within = std::abs(s.frequency - 1.0 / b) <= 5.0 * s.standard_error;
                all = all && within;
                row.insert(row.end(), {fmt(s.frequency), fmt(s.standard_error), within ? "1" : "0"});
            }
            csv.row(row);
        }
    }
    csv.close();
    return all ? kExitOk : kExitPropertyFailure;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Universal squash model toolkit", "squash"};
    app.set_config("--config", "", "key = value file with one [subcommand] section per subcommand");
    app.require_subcommand(1);

    Theorem1Options t1;
    auto* verify = app.add_subcommand("verify-theorem1", "Compare squashed and post-processed PNR statistics");
    verify->add_option("--trials", t1.trials, "Random instances");
    verify->add_option("--n-max", t1.n_max, "Largest photon number");
    verify->add_option("--m-max", t1.m_max, "Largest POVM size");
    verify->add_option("--tol", t1.tol, "Allowed max |p_CP - p_SQ|");
    verify->add_option("--seed", t1.seed, "RNG seed");
    verify->add_option("--out", t1.out, "Per-trial CSV ('-' for stdout)");
    verify->add_option("--failure-out", t1.failure_out, "Where the first failing instance is written");
    verify->add_option("--replay", t1.replay, "Re-run an instance written by --failure-out");
    verify->add_flag("--corrupt-povm", t1.corrupt_povm, "Debug: measure the PNR side with a permuted POVM");

    Fig3Options f3;
    auto* fig3 = app.add_subcommand("fig3", "Key rate per detected signal against the double-click rate");
    fig3->add_option("--eps", f3.eps, "Erroneous single-click rates")->delimiter(',');
    fig3->add_option("--delta-max", f3.delta_max, "Largest double-click rate");
    fig3->add_option("--delta-points", f3.delta_points, "Grid points in [0, delta-max]");
    fig3->add_option("--out", f3.out, "Output CSV ('-' for stdout)");

    Fig4Options f4;
    auto* fig4 = app.add_subcommand("fig4", "Decoy-state key rate against distance");
    fig4->add_option("--eps", f4.eps, "Scenario eps values")->delimiter(',');
    fig4->add_option("--delta", f4.delta, "Scenario delta values, paired with --eps")->delimiter(',');
    fig4->add_option("--distance-max", f4.distance_max, "Largest distance in km");
    fig4->add_option("--distance-step", f4.distance_step, "Distance step in km");
    fig4->add_option("--alpha", f4.alpha, "Fiber loss in dB/km");
    fig4->add_option("--eta-bob", f4.eta_bob, "Detection efficiency");
    fig4->add_option("--mu-lo", f4.mu_lo, "Smallest intensity searched");
    fig4->add_option("--mu-hi", f4.mu_hi, "Largest intensity searched");
    fig4->add_option("--threads", f4.threads, "Worker threads over distances");
    fig4->add_option("--out", f4.out, "Output CSV ('-' for stdout)");

    BoundsOptions bo;
    auto* bounds = app.add_subcommand("bounds", "Intervals from single- and double-click tallies");
    bounds->add_option("--input", bo.input, "Tally CSV")->required();
    bounds->add_option("--mode", bo.mode, "qkd, tomography or chsh")
        ->check(CLI::IsMember({"qkd", "tomography", "chsh"}));
    bounds->add_option("--key-label", bo.key_label, "Row label holding the key-bit tally (qkd)");
    bounds->add_option("--key-basis", bo.key_basis, "Row label of the key basis (qkd)");
    bounds->add_option("--out", bo.out, "Output CSV ('-' for stdout)");

    MonteCarloOptions mc;
    auto* montecarlo = app.add_subcommand("montecarlo", "Simulate a session under the copying attack");
    montecarlo->add_option("--protocol", mc.protocol, "six-state or bb84")
        ->check(CLI::IsMember({"six-state", "bb84"}));
    montecarlo->add_option("--signals", mc.signals, "Number of sifted signals");
    montecarlo->add_option("--p1", mc.p1, "Probability of forwarding one copy");
    montecarlo->add_option("--p2", mc.p2, "Probability of forwarding two copies");
    montecarlo->add_option("--key-fraction", mc.key_fraction, "Share of key-basis signals kept as key bits");
    montecarlo->add_option("--seed", mc.seed, "RNG seed");
    montecarlo->add_option("--threads", mc.threads, "Worker threads");
    montecarlo->add_option("--tallies", mc.tallies, "Tally CSV in the bounds schema");
    montecarlo->add_option("--report", mc.report, "Report CSV ('-' for stdout)");

    PassiveOptions po;
    auto* passive = app.add_subcommand("passive", "Exact basis-choice probability of passive detection");
    passive->add_option("--bases", po.bases, "Values of B")->delimiter(',');
    passive->add_option("--photons", po.photons, "Values of n")->delimiter(',');
    passive->add_option("--samples", po.samples, "Monte Carlo samples per (B, n); 0 skips");
    passive->add_option("--seed", po.seed, "RNG seed");
    passive->add_option("--out", po.out, "Output CSV ('-' for stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*verify) {
            return cmd_verify_theorem1(t1, out, err);
        }
        if (*fig3) {
            return cmd_fig3(f3, out);
        }
        if (*fig4) {
            return cmd_fig4(f4, out, err);
        }
        if (*bounds) {
            return cmd_bounds(bo, out);
        }
        if (*montecarlo) {
            return cmd_montecarlo(mc, out);
        }
        if (*passive) {
            return cmd_passive(po, out);
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace squash::cli

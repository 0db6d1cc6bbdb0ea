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

#include "squash/symstate.h"

#include <cmath>
#include <string>

#include "squash/errors.h"

namespace squash {

namespace {

void check_density_matrix(const Eigen::MatrixXcd& dm, const char* what) {
    if (dm.rows() != dm.cols() || dm.rows() < 2) {
        throw InvalidStateError(std::string(what) + ": density matrix must be square with dimension >= 2");
    }
    if (!dm.allFinite()) {
        throw InvalidStateError(std::string(what) + ": density matrix has non-finite entries");
    }
    double herm = (dm - dm.adjoint()).cwiseAbs().maxCoeff();
    if (herm > kHermitianTol) {
        throw InvalidStateError(std::string(what) + ": not Hermitian (deviation " + std::to_string(herm) + ")");
    }
    Complex tr = dm.trace();
    if (std::abs(tr - Complex(1.0)) > kTraceTol) {
        throw InvalidStateError(std::string(what) + ": trace is not 1");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(dm, Eigen::EigenvaluesOnly);
    if (eig.eigenvalues().minCoeff() < -kEigenvalueTol) {
        throw InvalidStateError(std::string(what) + ": negative eigenvalue " +
                                std::to_string(eig.eigenvalues().minCoeff()));
    }
}

Eigen::MatrixXcd hermitian_part(const Eigen::MatrixXcd& m) { return 0.5 * (m + m.adjoint()); }

// Coefficients of (a + b t)^p, lowest order first.
std::vector<Complex> binomial_power(Complex a, Complex b, int p) {
    std::vector<Complex> a_pow(p + 1, Complex(1.0));
    std::vector<Complex> b_pow(p + 1, Complex(1.0));
    for (int i = 1; i <= p; ++i) {
        a_pow[i] = a_pow[i - 1] * a;
        b_pow[i] = b_pow[i - 1] * b;
    }
    std::vector<Complex> out(p + 1);
    for (int r = 0; r <= p; ++r) {
        out[r] = binomial(p, r) * a_pow[p - r] * b_pow[r];
    }
    return out;
}

}  // namespace

double log_binomial(int n, int k) {
    if (k < 0 || k > n) {
        return -INFINITY;
    }
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

double binomial(int n, int k) {
    if (k < 0 || k > n) {
        return 0.0;
    }
    k = std::min(k, n - k);
    double c = 1.0;
    for (int i = 1; i <= k; ++i) {
        c = c * (n - k + i) / i;
    }
    return c;
}

QubitState QubitState::from_density_matrix(const Eigen::Matrix2cd& dm) {
    check_density_matrix(dm, "QubitState");
    return QubitState(dm);
}

QubitState QubitState::pure(const Eigen::Vector2cd& psi) {
    if (std::abs(psi.norm() - 1.0) > kTraceTol) {
        throw InvalidStateError("QubitState: pure state vector is not normalized");
    }
    return from_density_matrix(psi * psi.adjoint());
}

QubitUnitary QubitUnitary::from_matrix(const Eigen::Matrix2cd& u) {
    double dev = (u * u.adjoint() - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff();
    if (!(dev <= 1e-12)) {
        throw InvalidStateError("QubitUnitary: u u^dagger deviates from identity by " + std::to_string(dev));
    }
    return QubitUnitary(u);
}

QubitUnitary QubitUnitary::identity() { return QubitUnitary(Eigen::Matrix2cd::Identity()); }

SymmetricPhotonState SymmetricPhotonState::from_density_matrix(const Eigen::MatrixXcd& dm) {
    check_density_matrix(dm, "SymmetricPhotonState");
    return SymmetricPhotonState(dm);
}

SymmetricPhotonState SymmetricPhotonState::pure(const Eigen::VectorXcd& amplitudes) {
    if (amplitudes.size() < 2) {
        throw InvalidStateError("SymmetricPhotonState: need at least one photon");
    }
    if (std::abs(amplitudes.norm() - 1.0) > kTraceTol) {
        throw InvalidStateError("SymmetricPhotonState: amplitudes are not normalized");
    }
    return from_density_matrix(amplitudes * amplitudes.adjoint());
}

SymmetricPhotonState SymmetricPhotonState::dicke(int n, int k) {
    if (n < 1 || k < 0 || k > n) {
        throw DomainError("dicke: need n >= 1 and 0 <= k <= n");
    }
    Eigen::MatrixXcd dm = Eigen::MatrixXcd::Zero(n + 1, n + 1);
    dm(k, k) = 1.0;
    return SymmetricPhotonState(dm);
}

SymmetricPhotonState SymmetricPhotonState::mixture(std::span<const double> weights,
                                                   std::span<const SymmetricPhotonState> states) {
    if (weights.size() != states.size() || states.empty()) {
        throw DomainError("mixture: need one weight per state and at least one state");
    }
    const int n = states.front().photons();
    Eigen::MatrixXcd dm = Eigen::MatrixXcd::Zero(n + 1, n + 1);
    double total = 0.0;
    for (size_t i = 0; i < states.size(); ++i) {
        if (states[i].photons() != n) {
            throw DomainError("mixture: states have different photon numbers");
        }
        if (weights[i] < 0.0) {
            throw DomainError("mixture: negative weight");
        }
        dm += weights[i] * states[i].density_matrix();
        total += weights[i];
    }
    if (std::abs(total - 1.0) > kTraceTol) {
        throw DomainError("mixture: weights do not sum to 1");
    }
    return from_density_matrix(hermitian_part(dm));
}

std::vector<double> SymmetricPhotonState::collapse_probabilities() const {
    const int n = photons();
    std::vector<double> lambda(n + 1);
    for (int k = 0; k <= n; ++k) {
        lambda[k] = dm_(k, k).real() * std::exp(-log_binomial(n, k));
    }
    return lambda;
}

SymmetricPhotonState symmetrize(std::span<const Eigen::Vector2cd> factors) {
    if (factors.empty()) {
        throw DomainError("symmetrize: need at least one factor");
    }
    for (const auto& f : factors) {
        if (std::abs(f.norm() - 1.0) > 1e-12) {
            throw DomainError("symmetrize: factor is not normalized");
        }
    }
    // <D_k| psi_1 ... psi_n> = e_k / sqrt(C(n, k)), where e_k is the t^k
    // coefficient of prod_j (psi_j[0] + psi_j[1] t).
    const int n = static_cast<int>(factors.size());
    std::vector<Complex> poly{Complex(1.0)};
    for (const auto& f : factors) {
        std::vector<Complex> next(poly.size() + 1, Complex(0.0));
        for (size_t r = 0; r < poly.size(); ++r) {
            next[r] += poly[r] * f[0];
            next[r + 1] += poly[r] * f[1];
        }
        poly = std::move(next);
    }
    Eigen::VectorXcd amp(n + 1);
    for (int k = 0; k <= n; ++k) {
        amp[k] = poly[k] * std::exp(-0.5 * log_binomial(n, k));
    }
    double norm = amp.norm();
    if (norm < 1e-14) {
        throw DomainError("symmetrize: degenerate input, symmetric projection has zero norm");
    }
    amp /= norm;
    return SymmetricPhotonState::pure(amp);
}

Eigen::MatrixXcd symmetric_representation(const Eigen::Matrix2cd& a, int n) {
    if (n < 0) {
        throw DomainError("symmetric_representation: negative photon number");
    }
    // Creation operators transform as a_H -> a00 a_H + a10 a_V and
    // a_V -> a01 a_H + a11 a_V, so column k is read off
    // (a00 + a10 t)^{n-k} (a01 + a11 t)^k.
    Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(n + 1, n + 1);
    for (int k = 0; k <= n; ++k) {
        auto left = binomial_power(a(0, 0), a(1, 0), n - k);
        auto right = binomial_power(a(0, 1), a(1, 1), k);
        for (int r = 0; r <= n - k; ++r) {
            for (int q = 0; q <= k; ++q) {
                s(r + q, k) += left[r] * right[q];
            }
        }
        for (int j = 0; j <= n; ++j) {
            s(j, k) *= std::exp(0.5 * (log_binomial(n, k) - log_binomial(n, j)));
        }
    }
    return s;
}

SymmetricPhotonState apply_unitary(const SymmetricPhotonState& state, const QubitUnitary& u) {
    Eigen::MatrixXcd s = symmetric_representation(u.matrix(), state.photons());
    return SymmetricPhotonState::from_density_matrix(hermitian_part(s * state.density_matrix() * s.adjoint()));
}

QubitState squash(const SymmetricPhotonState& state) {
    const int n = state.photons();
    const Eigen::MatrixXcd& rho = state.density_matrix();
    Eigen::Matrix2cd q = Eigen::Matrix2cd::Zero();
    for (int k = 0; k <= n; ++k) {
        q(0, 0) += rho(k, k) * (static_cast<double>(n - k) / n);
        q(1, 1) += rho(k, k) * (static_cast<double>(k) / n);
    }
    for (int w = 0; w < n; ++w) {
        const double c = std::sqrt(static_cast<double>(n - w) * (w + 1)) / n;
        q(0, 1) += rho(w, w + 1) * c;
        q(1, 0) += rho(w + 1, w) * c;
    }
    return QubitState::from_density_matrix(q);
}

Eigen::MatrixXcd expand_full(const SymmetricPhotonState& state) {
    const int n = state.photons();
    if (n > kMaxExpandPhotons) {
        throw CapacityError("expand_full: n = " + std::to_string(n) + " exceeds the limit of " +
                            std::to_string(kMaxExpandPhotons) + " photons");
    }
    const Eigen::Index dim = Eigen::Index{1} << n;
    std::vector<int> weight(dim);
    std::vector<double> scale(n + 1);
    for (Eigen::Index x = 0; x < dim; ++x) {
        weight[x] = __builtin_popcountll(static_cast<unsigned long long>(x));
    }
    for (int k = 0; k <= n; ++k) {
        scale[k] = std::exp(-0.5 * log_binomial(n, k));
    }
    const Eigen::MatrixXcd& rho = state.density_matrix();
    Eigen::MatrixXcd full(dim, dim);
    for (Eigen::Index y = 0; y < dim; ++y) {
        for (Eigen::Index x = 0; x < dim; ++x) {
            full(x, y) = rho(weight[x], weight[y]) * (scale[weight[x]] * scale[weight[y]]);
        }
    }
    return full;
}

Eigen::MatrixXcd trace_out_photon(const Eigen::MatrixXcd& rho, const Eigen::Matrix2cd& m) {
    const int n = static_cast<int>(rho.rows()) - 1;
    if (n < 1) {
        throw DomainError("trace_out_photon: operator has no photons left");
    }
    // <c|_1 |D_j> = coef_c(j) |D'_{j-c}> with coef_0 = sqrt((n-j)/n), coef_1 = sqrt(j/n).
    auto coef = [n](int c, int j) {
        return std::sqrt(static_cast<double>(c == 0 ? n - j : j) / n);
    };
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n, n);
    for (int c = 0; c < 2; ++c) {
        for (int d = 0; d < 2; ++d) {
            const Complex w = m(d, c);
            if (w == Complex(0.0)) {
                continue;
            }
            for (int b = 0; b < n; ++b) {
                const double cb = coef(d, b + d);
                for (int a = 0; a < n; ++a) {
                    out(a, b) += w * (coef(c, a + c) * cb) * rho(a + c, b + d);
                }
            }
        }
    }
    return out;
}

}  // namespace squash

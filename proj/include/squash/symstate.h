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

#ifndef SQUASH_SYMSTATE_H
#define SQUASH_SYMSTATE_H

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace squash {

using Complex = std::complex<double>;

// Tolerances shared by every density-matrix type.
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kEigenvalueTol = 1e-10;

/// Largest photon number accepted by expand_full (2^n x 2^n output).
inline constexpr int kMaxExpandPhotons = 12;

/// log C(n, k).
double log_binomial(int n, int k);

/// C(n, k) as a double; exact for the sizes used in tests.
double binomial(int n, int k);

/// Single-photon polarization state.
class QubitState {
   public:
    /// Validates Hermiticity, unit trace and positivity.
    static QubitState from_density_matrix(const Eigen::Matrix2cd& dm);
    static QubitState pure(const Eigen::Vector2cd& psi);

    const Eigen::Matrix2cd& density_matrix() const { return dm_; }

   private:
    explicit QubitState(const Eigen::Matrix2cd& dm) : dm_(dm) {}
    Eigen::Matrix2cd dm_;
};

/// Polarization transform applied identically to every photon.
class QubitUnitary {
   public:
    static QubitUnitary from_matrix(const Eigen::Matrix2cd& u);
    static QubitUnitary identity();

    const Eigen::Matrix2cd& matrix() const { return u_; }
    QubitUnitary adjoint() const { return QubitUnitary(u_.adjoint()); }

   private:
    explicit QubitUnitary(const Eigen::Matrix2cd& u) : u_(u) {}
    Eigen::Matrix2cd u_;
};

/// n-photon bosonic polarization state, stored in the Dicke basis
/// |D_k> = |n-k photons H, k photons V>, k = 0..n.
class SymmetricPhotonState {
   public:
    static SymmetricPhotonState from_density_matrix(const Eigen::MatrixXcd& dm);
    /// Pure state from Dicke amplitudes; must be normalized within 1e-12.
    static SymmetricPhotonState pure(const Eigen::VectorXcd& amplitudes);
    static SymmetricPhotonState dicke(int n, int k);
    /// Convex combination; weights must be nonnegative and sum to 1.
    static SymmetricPhotonState mixture(std::span<const double> weights,
                                        std::span<const SymmetricPhotonState> states);

    int photons() const { return static_cast<int>(dm_.rows()) - 1; }
    const Eigen::MatrixXcd& density_matrix() const { return dm_; }

    /// Per-bit-string collapse probability lambda_{n-k,k} = <D_k|rho|D_k> / C(n, k).
    std::vector<double> collapse_probabilities() const;

   private:
    explicit SymmetricPhotonState(Eigen::MatrixXcd dm) : dm_(std::move(dm)) {}
    Eigen::MatrixXcd dm_;
};

/// Normalized projection of psi_1 (x) ... (x) psi_n onto the symmetric subspace.
/// Throws DomainError if the projection norm is below 1e-14.
SymmetricPhotonState symmetrize(std::span<const Eigen::Vector2cd> factors);

/// Matrix of A^{(x)n} restricted to the symmetric subspace, in the Dicke basis.
/// A may be any 2x2 matrix (the map is multiplicative).
Eigen::MatrixXcd symmetric_representation(const Eigen::Matrix2cd& a, int n);

/// rho' = U^{(x)n} rho U^{dagger (x)n}.
SymmetricPhotonState apply_unitary(const SymmetricPhotonState& state, const QubitUnitary& u);

/// One-photon reduced density matrix.
QubitState squash(const SymmetricPhotonState& state);

/// Full 2^n x 2^n tensor-space density matrix. Photon 1 is the most
/// significant bit of the tensor index. Throws CapacityError for n > 12.
Eigen::MatrixXcd expand_full(const SymmetricPhotonState& state);

/// Tr_1[(M (x) I) rho] for a (possibly unnormalized) symmetric operator on n
/// photons, returned as a symmetric operator on n - 1 photons.
Eigen::MatrixXcd trace_out_photon(const Eigen::MatrixXcd& rho, const Eigen::Matrix2cd& m);

}  // namespace squash

#endif

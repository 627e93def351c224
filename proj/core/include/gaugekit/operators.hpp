#pragma once

// Dense operator algebra on composite photon (Fock) and collective-spin
// spaces. Conventions:
//   * hbar = 1.
//   * Fock factors are truncated at n_max, dimension n_max + 1.
//   * Spin factors use the |j, m> basis with m ASCENDING: index 0 is m = -j.
//     Hence index 0 of any Dicke space is the bare ground state.
//   * Tensor products keep the left operand as the slow index
//     (photon (x) spin throughout the library).

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace gaugekit {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

enum class FactorKind { fock, spin };

struct BasisFactor {
  FactorKind kind;
  std::size_t dimension;

  friend bool operator==(const BasisFactor&, const BasisFactor&) = default;
};

class CompositeBasis {
 public:
  CompositeBasis() = default;
  explicit CompositeBasis(std::vector<BasisFactor> factors);

  static CompositeBasis fock(int n_max);
  static CompositeBasis spin(int two_j);

  const std::vector<BasisFactor>& factors() const noexcept { return factors_; }
  std::size_t total_dim() const noexcept;

  /// Concatenation of factor lists, i.e. the basis of a tensor product.
  CompositeBasis operator*(const CompositeBasis& rhs) const;

  friend bool operator==(const CompositeBasis&, const CompositeBasis&) = default;

 private:
  std::vector<BasisFactor> factors_;
};

class OperatorMatrix {
 public:
  OperatorMatrix() = default;
  OperatorMatrix(CompositeBasis basis, ComplexMatrix entries);

  const CompositeBasis& basis() const noexcept { return basis_; }
  const ComplexMatrix& entries() const noexcept { return entries_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(entries_.rows()); }

  Complex operator()(Eigen::Index row, Eigen::Index col) const { return entries_(row, col); }

  OperatorMatrix adjoint() const;

  /// max |M - M^dagger| entrywise.
  double hermiticity_error() const;
  /// max |U U^dagger - I| entrywise.
  double unitarity_error() const;
  double max_abs() const;

  OperatorMatrix& operator+=(const OperatorMatrix& rhs);
  OperatorMatrix& operator-=(const OperatorMatrix& rhs);
  OperatorMatrix& operator*=(Complex scale);

  friend OperatorMatrix operator+(OperatorMatrix lhs, const OperatorMatrix& rhs) { return lhs += rhs; }
  friend OperatorMatrix operator-(OperatorMatrix lhs, const OperatorMatrix& rhs) { return lhs -= rhs; }
  friend OperatorMatrix operator*(OperatorMatrix lhs, Complex s) { return lhs *= s; }
  friend OperatorMatrix operator*(Complex s, OperatorMatrix rhs) { return rhs *= s; }
  friend OperatorMatrix operator*(const OperatorMatrix& lhs, const OperatorMatrix& rhs);

 private:
  CompositeBasis basis_;
  ComplexMatrix entries_;
};

OperatorMatrix identity(const CompositeBasis& basis);

/// Truncated ladder operator: a[n-1, n] = sqrt(n), n = 1..n_max.
OperatorMatrix annihilator(int n_max);

/// Photon number a^dagger a, built from the diagonal so that the last
/// level is exactly n_max (not the truncated product's value).
OperatorMatrix number_operator(int n_max);

struct SpinOperators {
  OperatorMatrix x;
  OperatorMatrix y;
  OperatorMatrix z;
};

/// Angular-momentum matrices for spin j (2j a positive integer), standard
/// normalisation [Jx, Jy] = i Jz, J+- = Jx +- i Jy.
SpinOperators spin_operators(double j);

/// Kronecker product A (x) B.
OperatorMatrix tensor(const OperatorMatrix& a, const OperatorMatrix& b);

OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b);

struct EigenSystem {
  RealVector values;     // ascending
  ComplexMatrix vectors; // columns, orthonormal
};

/// Full Hermitian eigendecomposition. Rejects non-Hermitian input.
EigenSystem eig_sym(const OperatorMatrix& h);

/// The lowest `count` eigenvalues (all when count == 0), ascending.
RealVector eigenvalues_sym(const OperatorMatrix& h, std::size_t count = 0);

using SpectralFunction = std::function<Complex(double)>;

/// f(H) = V f(Lambda) V^dagger for Hermitian H.
OperatorMatrix hermitian_function(const OperatorMatrix& h, const SpectralFunction& f);

/// Tolerance used to accept a matrix as Hermitian, relative to its scale.
inline constexpr double kHermitianTolerance = 1e-10;

}  // namespace gaugekit

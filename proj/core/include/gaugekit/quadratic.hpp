#pragma once

// Two-mode quadratic (Bogoliubov) Hamiltonians.
//
// Quadrature convention, fixed across the library:
//   x = (a + a^dagger) / sqrt(2),   p = i (a^dagger - a) / sqrt(2),   [x, p] = i.
//
// A QuadraticBosonModel is stated in ladder form (hbar = 1, constants dropped):
//
//   H = omega_a a^dagger a + omega_b b^dagger b + H_cross + quad_coeff (q + q^dagger)^2
//
// with q the mode named by `quad_on` and
//
//   pa_xb :  H_cross =  coupling * omega_a * i(a^dagger - a)(b + b^dagger)
//                    =  2 coupling omega_a  p_a x_b
//   xa_pb :  H_cross = -coupling * omega_b * i(b^dagger - b)(a + a^dagger)
//                    = -2 coupling omega_b  x_a p_b
//
// i.e. the cross term is always weighted by the frequency of the mode whose
// momentum appears. The squared term is 2 quad_coeff x_q^2.

#include <array>

#include <Eigen/Dense>

namespace gaugekit {

enum class Mode { a, b };

enum class CouplingForm { pa_xb, xa_pb };

struct QuadraticBosonModel {
  double omega_a = 1.0;
  double omega_b = 1.0;
  double coupling = 0.0;
  double quad_coeff = 0.0;
  Mode quad_on = Mode::a;
  CouplingForm coupling_form = CouplingForm::xa_pb;

  /// Throws InvalidArgument unless omega_a, omega_b > 0 and quad_coeff >= 0.
  void validate() const;
};

struct PolaritonPair {
  double lower = 0.0;
  double upper = 0.0;
  bool stable = true;
};

using Matrix4 = Eigen::Matrix4d;

/// Hessian M of H = 1/2 z^T M z on z = (x_a, p_a, x_b, p_b).
Matrix4 quadrature_hessian(const QuadraticBosonModel& model);

/// Dynamical matrix J M from Hamilton's equations dz/dt = J grad H,
/// J = diag([[0, 1], [-1, 0]], [[0, 1], [-1, 0]]).
Matrix4 dynamical_matrix(const QuadraticBosonModel& model);

/// Normal-mode frequencies: positive imaginary parts of the eigenvalues of
/// the dynamical matrix, sorted. `stable` is false when any eigenvalue has a
/// real part beyond 1e-10 (relative to the matrix scale when that exceeds 1).
PolaritonPair diagonalize_quadratic(const QuadraticBosonModel& model);

/// Tolerance on the real part of dynamical-matrix eigenvalues.
inline constexpr double kStabilityTolerance = 1e-10;

}  // namespace gaugekit

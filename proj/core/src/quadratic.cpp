#include "gaugekit/quadratic.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "gaugekit/error.hpp"

namespace gaugekit {

namespace {
constexpr int kXa = 0, kPa = 1, kXb = 2, kPb = 3;
}

void QuadraticBosonModel::validate() const {
  if (!(omega_a > 0.0)) throw InvalidArgument("omega_a", "must be > 0");
  if (!(omega_b > 0.0)) throw InvalidArgument("omega_b", "must be > 0");
  if (!(quad_coeff >= 0.0)) throw InvalidArgument("quad_coeff", "must be >= 0");
  if (!std::isfinite(coupling)) throw InvalidArgument("coupling", "must be finite");
}

Matrix4 quadrature_hessian(const QuadraticBosonModel& model) {
  model.validate();
  Matrix4 m = Matrix4::Zero();
  m(kXa, kXa) = m(kPa, kPa) = model.omega_a;
  m(kXb, kXb) = m(kPb, kPb) = model.omega_b;

  switch (model.coupling_form) {
    case CouplingForm::pa_xb:
      m(kPa, kXb) = m(kXb, kPa) = 2.0 * model.coupling * model.omega_a;
      break;
    case CouplingForm::xa_pb:
      m(kXa, kPb) = m(kPb, kXa) = -2.0 * model.coupling * model.omega_b;
      break;
  }

  const int q = model.quad_on == Mode::a ? kXa : kXb;
  m(q, q) += 4.0 * model.quad_coeff;
  return m;
}

Matrix4 dynamical_matrix(const QuadraticBosonModel& model) {
  Matrix4 j = Matrix4::Zero();
  j(kXa, kPa) = 1.0;
  j(kPa, kXa) = -1.0;
  j(kXb, kPb) = 1.0;
  j(kPb, kXb) = -1.0;
  return j * quadrature_hessian(model);
}

PolaritonPair diagonalize_quadratic(const QuadraticBosonModel& model) {
  const Matrix4 dyn = dynamical_matrix(model);
  Eigen::EigenSolver<Matrix4> solver(dyn, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw EigenDecompositionError("dynamical-matrix eigenvalue solve failed");
  }
  const Eigen::Vector4cd ev = solver.eigenvalues();

  const double scale = std::max(1.0, dyn.cwiseAbs().maxCoeff());
  bool stable = true;
  std::array<double, 4> imag{};
  for (int i = 0; i < 4; ++i) {
    if (std::abs(ev(i).real()) > kStabilityTolerance * scale) stable = false;
    imag[static_cast<std::size_t>(i)] = ev(i).imag();
  }
  std::sort(imag.begin(), imag.end());

  PolaritonPair out;
  out.stable = stable;
  // Eigenvalues of a Hamiltonian matrix come in +-i omega pairs, so the two
  // largest imaginary parts are the positive frequencies.
  out.lower = std::max(0.0, imag[2]);
  out.upper = std::max(0.0, imag[3]);
  return out;
}

}  // namespace gaugekit

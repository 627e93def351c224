#include "gaugekit/operators.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "gaugekit/error.hpp"

namespace gaugekit {

namespace {

void require_same_basis(const OperatorMatrix& a, const OperatorMatrix& b, const char* what) {
  if (!(a.basis() == b.basis())) {
    throw InvalidArgument(what, "operands live on different bases");
  }
}

bool is_real(const ComplexMatrix& m) {
  return m.imag().cwiseAbs().maxCoeff() == 0.0;
}

void require_hermitian(const OperatorMatrix& h, const char* what) {
  const double scale = std::max(1.0, h.max_abs());
  const double err = h.hermiticity_error();
  if (err > kHermitianTolerance * scale) {
    std::ostringstream msg;
    msg << "matrix is not Hermitian (max|H - H^dagger| = " << err << ", scale " << scale << ")";
    throw InvalidArgument(what, msg.str());
  }
}

[[noreturn]] void report_failure(const OperatorMatrix& h, Eigen::ComputationInfo info) {
  std::ostringstream msg;
  msg << "Hermitian eigendecomposition failed (info=" << static_cast<int>(info)
      << ", dim=" << h.dim() << ", max|H|=" << h.max_abs()
      << ", hermiticity error=" << h.hermiticity_error() << ")";
  throw EigenDecompositionError(msg.str());
}

}  // namespace

CompositeBasis::CompositeBasis(std::vector<BasisFactor> factors) : factors_(std::move(factors)) {
  for (const auto& f : factors_) {
    if (f.dimension < 2) {
      throw InvalidArgument("basis", "every factor needs dimension >= 2");
    }
  }
}

CompositeBasis CompositeBasis::fock(int n_max) {
  if (n_max < 1) {
    throw InvalidArgument("n_max", "Fock cutoff must be >= 1, got " + std::to_string(n_max));
  }
  return CompositeBasis({{FactorKind::fock, static_cast<std::size_t>(n_max) + 1}});
}

CompositeBasis CompositeBasis::spin(int two_j) {
  if (two_j < 1) {
    throw InvalidArgument("j", "2j must be a positive integer, got " + std::to_string(two_j));
  }
  return CompositeBasis({{FactorKind::spin, static_cast<std::size_t>(two_j) + 1}});
}

std::size_t CompositeBasis::total_dim() const noexcept {
  if (factors_.empty()) return 0;
  return std::accumulate(factors_.begin(), factors_.end(), std::size_t{1},
                         [](std::size_t acc, const BasisFactor& f) { return acc * f.dimension; });
}

CompositeBasis CompositeBasis::operator*(const CompositeBasis& rhs) const {
  auto merged = factors_;
  merged.insert(merged.end(), rhs.factors_.begin(), rhs.factors_.end());
  return CompositeBasis(std::move(merged));
}

OperatorMatrix::OperatorMatrix(CompositeBasis basis, ComplexMatrix entries)
    : basis_(std::move(basis)), entries_(std::move(entries)) {
  const auto n = static_cast<Eigen::Index>(basis_.total_dim());
  if (entries_.rows() != n || entries_.cols() != n) {
    throw InvalidArgument("entries", "matrix shape does not match basis dimension " +
                                         std::to_string(basis_.total_dim()));
  }
}

OperatorMatrix OperatorMatrix::adjoint() const {
  return OperatorMatrix(basis_, entries_.adjoint());
}

double OperatorMatrix::hermiticity_error() const {
  if (entries_.size() == 0) return 0.0;
  return (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
}

double OperatorMatrix::unitarity_error() const {
  if (entries_.size() == 0) return 0.0;
  const ComplexMatrix prod = entries_ * entries_.adjoint();
  return (prod - ComplexMatrix::Identity(prod.rows(), prod.cols())).cwiseAbs().maxCoeff();
}

double OperatorMatrix::max_abs() const {
  if (entries_.size() == 0) return 0.0;
  return entries_.cwiseAbs().maxCoeff();
}

OperatorMatrix& OperatorMatrix::operator+=(const OperatorMatrix& rhs) {
  require_same_basis(*this, rhs, "operator+");
  entries_ += rhs.entries_;
  return *this;
}

OperatorMatrix& OperatorMatrix::operator-=(const OperatorMatrix& rhs) {
  require_same_basis(*this, rhs, "operator-");
  entries_ -= rhs.entries_;
  return *this;
}

OperatorMatrix& OperatorMatrix::operator*=(Complex scale) {
  entries_ *= scale;
  return *this;
}

OperatorMatrix operator*(const OperatorMatrix& lhs, const OperatorMatrix& rhs) {
  require_same_basis(lhs, rhs, "operator*");
  return OperatorMatrix(lhs.basis(), lhs.entries() * rhs.entries());
}

OperatorMatrix identity(const CompositeBasis& basis) {
  const auto n = static_cast<Eigen::Index>(basis.total_dim());
  return OperatorMatrix(basis, ComplexMatrix::Identity(n, n));
}

OperatorMatrix annihilator(int n_max) {
  auto basis = CompositeBasis::fock(n_max);
  ComplexMatrix a = ComplexMatrix::Zero(n_max + 1, n_max + 1);
  for (int n = 1; n <= n_max; ++n) {
    a(n - 1, n) = std::sqrt(static_cast<double>(n));
  }
  return OperatorMatrix(std::move(basis), std::move(a));
}

OperatorMatrix number_operator(int n_max) {
  auto basis = CompositeBasis::fock(n_max);
  ComplexMatrix n = ComplexMatrix::Zero(n_max + 1, n_max + 1);
  for (int k = 0; k <= n_max; ++k) n(k, k) = static_cast<double>(k);
  return OperatorMatrix(std::move(basis), std::move(n));
}

SpinOperators spin_operators(double j) {
  const double two_j_real = 2.0 * j;
  const long two_j = std::lround(two_j_real);
  if (!(j > 0.0) || std::abs(two_j_real - static_cast<double>(two_j)) > 1e-12) {
    throw InvalidArgument("j", "spin must be a positive half-integer");
  }
  const auto dim = static_cast<Eigen::Index>(two_j + 1);
  auto basis = CompositeBasis::spin(static_cast<int>(two_j));

  ComplexMatrix jz = ComplexMatrix::Zero(dim, dim);
  ComplexMatrix jplus = ComplexMatrix::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const double m = -j + static_cast<double>(i);
    jz(i, i) = m;
    if (i + 1 < dim) {
      // J+ |m> = sqrt(j(j+1) - m(m+1)) |m+1>
      jplus(i + 1, i) = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
    }
  }
  const ComplexMatrix jminus = jplus.adjoint();
  ComplexMatrix jx = 0.5 * (jplus + jminus);
  ComplexMatrix jy = Complex(0.0, -0.5) * (jplus - jminus);
  return {OperatorMatrix(basis, std::move(jx)), OperatorMatrix(basis, std::move(jy)),
          OperatorMatrix(basis, std::move(jz))};
}

OperatorMatrix tensor(const OperatorMatrix& a, const OperatorMatrix& b) {
  const auto& ea = a.entries();
  const auto& eb = b.entries();
  const Eigen::Index ra = ea.rows(), rb = eb.rows();
  ComplexMatrix out(ra * rb, ra * rb);
  for (Eigen::Index i = 0; i < ra; ++i) {
    for (Eigen::Index k = 0; k < ra; ++k) {
      out.block(i * rb, k * rb, rb, rb) = ea(i, k) * eb;
    }
  }
  return OperatorMatrix(a.basis() * b.basis(), std::move(out));
}

OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b) {
  return a * b - b * a;
}

EigenSystem eig_sym(const OperatorMatrix& h) {
  require_hermitian(h, "eig_sym");
  if (is_real(h.entries())) {
    const Eigen::MatrixXd re = h.entries().real();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(re);
    if (solver.info() != Eigen::Success) report_failure(h, solver.info());
    return {solver.eigenvalues(), solver.eigenvectors().cast<Complex>()};
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h.entries());
  if (solver.info() != Eigen::Success) report_failure(h, solver.info());
  return {solver.eigenvalues(), solver.eigenvectors()};
}

RealVector eigenvalues_sym(const OperatorMatrix& h, std::size_t count) {
  require_hermitian(h, "eigenvalues_sym");
  RealVector values;
  if (is_real(h.entries())) {
    const Eigen::MatrixXd re = h.entries().real();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(re, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) report_failure(h, solver.info());
    values = solver.eigenvalues();
  } else {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h.entries(), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) report_failure(h, solver.info());
    values = solver.eigenvalues();
  }
  if (count == 0 || count >= static_cast<std::size_t>(values.size())) return values;
  return values.head(static_cast<Eigen::Index>(count));
}

OperatorMatrix hermitian_function(const OperatorMatrix& h, const SpectralFunction& f) {
  const EigenSystem es = eig_sym(h);
  Eigen::VectorXcd fvals(es.values.size());
  for (Eigen::Index i = 0; i < es.values.size(); ++i) fvals(i) = f(es.values(i));
  ComplexMatrix out = es.vectors * fvals.asDiagonal() * es.vectors.adjoint();
  if (fvals.imag().cwiseAbs().maxCoeff() == 0.0) {
    out = (0.5 * (out + out.adjoint())).eval();
  }
  return OperatorMatrix(h.basis(), std::move(out));
}

}  // namespace gaugekit

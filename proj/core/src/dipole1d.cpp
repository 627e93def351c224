#include "gaugekit/dipole1d.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <vector>

#include <lapacke.h>

#include "gaugekit/error.hpp"
#include "gaugekit/format.hpp"

namespace gaugekit {

namespace {

constexpr double kBoundaryLimit = 1e-6;
constexpr double kRefinementTolerance = 1e-6;

struct RawEigen {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;  // interior points x states, unit Euclidean norm
};

// Selected eigenpairs (indices [first, last], zero-based) of the symmetric
// tridiagonal finite-difference Hamiltonian on the interior points.
RawEigen tridiagonal_eigenpairs(const PotentialSpec& spec, std::size_t first, std::size_t last,
                                bool all) {
  const std::size_t n = spec.grid.n_points;
  const std::size_t m = n - 2;
  const double h = spec.grid.spacing();
  const double ek = spec.kinetic_coeff;

  std::vector<double> diag(m), off(m);
  for (std::size_t i = 0; i < m; ++i) {
    diag[i] = ek / (h * h) + spec.potential(spec.grid.at(i + 1));
    off[i] = -ek / (2.0 * h * h);
  }

  const auto mm = static_cast<lapack_int>(m);
  const lapack_int want = all ? mm : static_cast<lapack_int>(last - first + 1);
  lapack_int found = 0;
  std::vector<double> w(m);
  Eigen::MatrixXd z(static_cast<Eigen::Index>(m), want);
  std::vector<lapack_int> support(2 * static_cast<std::size_t>(want));

  const lapack_int info = LAPACKE_dstevr(
      LAPACK_COL_MAJOR, 'V', all ? 'A' : 'I', mm, diag.data(), off.data(), 0.0, 0.0,
      static_cast<lapack_int>(first + 1), static_cast<lapack_int>(last + 1), 0.0, &found, w.data(),
      z.data(), mm, support.data());
  if (info != 0 || found != want) {
    throw EigenDecompositionError("tridiagonal eigensolve failed (info=" + std::to_string(info) +
                                  ", found " + std::to_string(found) + " of " +
                                  std::to_string(want) + ")");
  }
  RawEigen out;
  out.values = Eigen::Map<Eigen::VectorXd>(w.data(), want);
  out.vectors = std::move(z);
  return out;
}

ParticleSpectrum assemble(const PotentialSpec& spec, const RawEigen& raw) {
  const std::size_t n = spec.grid.n_points;
  const double h = spec.grid.spacing();
  const auto states = raw.values.size();

  ParticleSpectrum out;
  out.energies = raw.values;
  out.kinetic_coeff = spec.kinetic_coeff;
  out.grid = spec.grid;
  out.wavefunctions = Eigen::MatrixXd::Zero(states, static_cast<Eigen::Index>(n));
  out.wavefunctions.middleCols(1, static_cast<Eigen::Index>(n - 2)) =
      raw.vectors.transpose() / std::sqrt(h);

  // psi_0 positive on average; then every d(k,0) >= 0.
  auto& psi = out.wavefunctions;
  if (psi.row(0).sum() < 0.0) psi.row(0) *= -1.0;
  const Eigen::VectorXd x = spec.grid.points();
  const Eigen::RowVectorXd x_psi0 = psi.row(0).cwiseProduct(x.transpose());
  for (Eigen::Index k = 1; k < states; ++k) {
    if (h * psi.row(k).dot(x_psi0) < 0.0) psi.row(k) *= -1.0;
  }

  // Trapezoid weights are h everywhere except the (zero-valued) end points.
  out.dipole = h * psi * x.asDiagonal() * psi.transpose();
  out.dipole = (0.5 * (out.dipole + out.dipole.transpose())).eval();
  for (Eigen::Index k = 1; k < states; ++k) {
    // Parity-forbidden elements are zero up to roundoff; keep the sign
    // convention exact.
    out.dipole(k, 0) = out.dipole(0, k) = std::max(out.dipole(k, 0), 0.0);
  }
  return out;
}

double boundary_ratio(const ParticleSpectrum& s) {
  const auto n = static_cast<Eigen::Index>(s.grid.n_points);
  const Eigen::Index band = std::max<Eigen::Index>(3, n / 50);
  double worst = 0.0;
  for (Eigen::Index k = 0; k < s.wavefunctions.rows(); ++k) {
    const auto row = s.wavefunctions.row(k);
    const double peak = row.cwiseAbs().maxCoeff();
    const double edge = std::max(row.head(band).cwiseAbs().maxCoeff(),
                                 row.tail(band).cwiseAbs().maxCoeff());
    worst = std::max(worst, edge / peak);
  }
  return worst;
}

}  // namespace

Eigen::VectorXd Grid::points() const {
  Eigen::VectorXd x(static_cast<Eigen::Index>(n_points));
  for (std::size_t i = 0; i < n_points; ++i) x(static_cast<Eigen::Index>(i)) = at(i);
  return x;
}

PotentialSpec PotentialSpec::double_well(double beta, double gamma, double half_extent,
                                         std::size_t n_points, double kinetic_coeff) {
  PotentialSpec spec;
  spec.kinetic_coeff = kinetic_coeff;
  spec.beta = beta;
  spec.gamma = gamma;
  spec.kind = PotentialKind::double_well;
  spec.grid = {-half_extent, half_extent, n_points};
  return spec;
}

PotentialSpec PotentialSpec::harmonic(double half_extent, std::size_t n_points,
                                      double kinetic_coeff) {
  PotentialSpec spec;
  spec.kinetic_coeff = kinetic_coeff;
  spec.beta = 0.0;
  spec.gamma = 0.0;
  spec.kind = PotentialKind::harmonic;
  spec.grid = {-half_extent, half_extent, n_points};
  return spec;
}

double PotentialSpec::potential(double x) const {
  switch (kind) {
    case PotentialKind::harmonic:
      return kinetic_coeff * 0.5 * x * x;
    case PotentialKind::double_well:
      break;
  }
  const double x2 = x * x;
  return kinetic_coeff * (-0.5 * beta * x2 + 0.25 * gamma * x2 * x2);
}

void PotentialSpec::validate() const {
  if (!(kinetic_coeff > 0.0)) throw InvalidArgument("ek", "kinetic coefficient must be > 0");
  if (grid.n_points < 201) throw InvalidArgument("points", "grid needs at least 201 points");
  if (!(grid.x_max > grid.x_min)) throw InvalidArgument("extent", "x_max must exceed x_min");
  if (kind == PotentialKind::double_well && !(gamma > 0.0)) {
    throw InvalidArgument("gamma", "quartic coefficient must be > 0 (confining)");
  }
  if (!std::isfinite(beta)) throw InvalidArgument("beta", "must be finite");
}

ParticleSpectrum solve_bound_states(const PotentialSpec& spec, std::size_t n_states,
                                    SolveOptions options) {
  spec.validate();
  if (n_states < 1) throw InvalidArgument("states", "need at least one state");
  if (10 * n_states > spec.grid.n_points) {
    throw InvalidArgument("states", "n_states must be much smaller than the grid size");
  }

  ParticleSpectrum out =
      assemble(spec, tridiagonal_eigenpairs(spec, 0, n_states - 1, /*all=*/false));

  const double ratio = boundary_ratio(out);
  if (ratio > kBoundaryLimit) {
    throw GridTooSmall(ratio, 1.25 * std::max(std::abs(spec.grid.x_min), spec.grid.x_max));
  }

  if (options.check_grid_convergence) {
    PotentialSpec fine = spec;
    fine.grid.n_points = 2 * spec.grid.n_points - 1;
    const RawEigen refined = tridiagonal_eigenpairs(fine, 0, n_states - 1, false);
    out.max_refinement_shift = (refined.values - out.energies).cwiseAbs().maxCoeff();
    if (n_states >= 2) {
      const double coarse = out.energies(1) - out.energies(0);
      const double fine_gap = refined.values(1) - refined.values(0);
      out.transition_refinement_shift = std::abs(fine_gap - coarse) / coarse;
    } else {
      out.transition_refinement_shift = out.max_refinement_shift / spec.kinetic_coeff;
    }
    out.grid_converged = out.max_refinement_shift < kRefinementTolerance * spec.kinetic_coeff;
  }
  return out;
}

ParticleSpectrum solve_bound_states_auto_extent(PotentialSpec spec, std::size_t n_states,
                                                SolveOptions options) {
  for (int attempt = 0; attempt < 24; ++attempt) {
    try {
      return solve_bound_states(spec, n_states, options);
    } catch (const GridTooSmall& e) {
      const double h = spec.grid.spacing();
      const double half = e.suggested_extent();
      spec.grid.x_min = -half;
      spec.grid.x_max = half;
      spec.grid.n_points = static_cast<std::size_t>(std::llround(2.0 * half / h)) + 1;
    }
  }
  throw Error("could not find a grid extent that contains the requested bound states");
}

ParticleSpectrum solve_all_states(const PotentialSpec& spec) {
  spec.validate();
  return assemble(spec, tridiagonal_eigenpairs(spec, 0, spec.grid.n_points - 3, /*all=*/true));
}

double trk_residual(const ParticleSpectrum& spectrum, std::size_t n_terms) {
  if (n_terms + 1 > spectrum.n_states()) {
    throw InvalidArgument("n_terms", "only " + std::to_string(spectrum.n_states() - 1) +
                                         " transitions available");
  }
  double sum = 0.0;
  for (std::size_t k = 1; k <= n_terms; ++k) {
    const double d = spectrum.dipole(static_cast<Eigen::Index>(k), 0);
    sum += spectrum.transition(k, 0) * d * d;
  }
  const double target = 0.5 * spectrum.kinetic_coeff;
  return std::abs(sum - target) / target;
}

double NonlocalKernel::off_diagonal_fraction(std::size_t width_steps) const {
  const Eigen::Index n = kernel.rows();
  const auto w = static_cast<Eigen::Index>(width_steps);
  double total = 0.0, off = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const double v = kernel(i, j) * kernel(i, j);
      total += v;
      if (std::abs(i - j) > w) off += v;
    }
  }
  return total > 0.0 ? off / total : 0.0;
}

double NonlocalKernel::asymmetry() const {
  return (kernel - kernel.transpose()).cwiseAbs().maxCoeff();
}

NonlocalKernel nonlocal_kernel(const ParticleSpectrum& spectrum, const PotentialSpec& potential,
                               std::size_t n_levels) {
  if (n_levels < 1 || n_levels > spectrum.n_states()) {
    throw InvalidArgument("levels", "n_levels must be in [1, " +
                                        std::to_string(spectrum.n_states()) + "]");
  }
  const auto n = static_cast<Eigen::Index>(n_levels);
  const double h = spectrum.grid.spacing();
  const Eigen::MatrixXd psi = spectrum.wavefunctions.topRows(n);

  Eigen::VectorXd v(static_cast<Eigen::Index>(spectrum.grid.n_points));
  for (std::size_t i = 0; i < spectrum.grid.n_points; ++i) {
    v(static_cast<Eigen::Index>(i)) = potential.potential(spectrum.grid.at(i));
  }
  Eigen::MatrixXd v_levels = h * psi * v.asDiagonal() * psi.transpose();
  v_levels = (0.5 * (v_levels + v_levels.transpose())).eval();

  NonlocalKernel out;
  out.n_levels = n_levels;
  out.grid = spectrum.grid;
  out.kernel = psi.transpose() * v_levels * psi;
  out.kernel = (0.5 * (out.kernel + out.kernel.transpose())).eval();
  return out;
}

double DerivedCouplings::single_transition_D() const {
  if (D_prime_source.empty()) return 0.0;
  return static_cast<double>(N) * D_prime_source.front();
}

double DerivedCouplings::alpha() const {
  const double single = single_transition_D();
  return single > 0.0 ? D / single : 1.0;
}

DerivedCouplings derive_couplings(const ParticleSpectrum& spectrum, double A0, std::size_t N,
                                  std::size_t n_transitions) {
  if (n_transitions < 1 || n_transitions + 1 > spectrum.n_states()) {
    throw InvalidArgument("n_transitions", "must be in [1, " +
                                               std::to_string(spectrum.n_states() - 1) + "]");
  }
  if (N < 1) throw InvalidArgument("N", "need at least one dipole");

  DerivedCouplings out;
  out.N = N;
  out.A0 = A0;
  double sum = 0.0;
  for (std::size_t k = 1; k <= n_transitions; ++k) {
    const double eta_k = A0 * spectrum.dipole(static_cast<Eigen::Index>(k), 0);
    const double term = spectrum.transition(k, 0) * eta_k * eta_k;
    out.eta_k.push_back(eta_k);
    out.D_prime_source.push_back(term);
    sum += term;
  }
  out.eta = out.eta_k.front();
  out.D = static_cast<double>(N) * sum;
  return out;
}

void write_spectrum_csv(std::ostream& out, const ParticleSpectrum& spectrum) {
  out << "k,energy,d_k0\n";
  for (std::size_t k = 0; k < spectrum.n_states(); ++k) {
    const auto i = static_cast<Eigen::Index>(k);
    out << k << ',' << format_number(spectrum.energies(i)) << ','
        << format_number(spectrum.dipole(i, 0)) << '\n';
  }
}

void write_kernel_csv(std::ostream& out, const NonlocalKernel& kernel, std::size_t stride) {
  if (stride == 0) stride = 1;
  out << "x,xprime,W\n";
  const std::size_t n = kernel.grid.n_points;
  for (std::size_t i = 0; i < n; i += stride) {
    const std::string x = format_number(kernel.grid.at(i));
    for (std::size_t j = 0; j < n; j += stride) {
      out << x << ',' << format_number(kernel.grid.at(j)) << ','
          << format_number(kernel.kernel(static_cast<Eigen::Index>(i),
                                         static_cast<Eigen::Index>(j)))
          << '\n';
    }
  }
}

}  // namespace gaugekit

#pragma once

// Single effective particle in one dimension, adimensional units:
//
//   H0 = E_k p^2 / 2 + V(x),     [x, p] = i,   q = 1, hbar = 1.
//
// Discretised with second-order central differences on a uniform grid with
// Dirichlet walls (psi = 0 at both grid end points). Matrix elements use
// trapezoidal quadrature on the same grid; wavefunctions are stored on the
// full grid, end points included.

#include <cstddef>
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

namespace gaugekit {

struct Grid {
  double x_min = -4.0;
  double x_max = 4.0;
  std::size_t n_points = 2001;

  double spacing() const { return (x_max - x_min) / static_cast<double>(n_points - 1); }
  double at(std::size_t i) const { return x_min + spacing() * static_cast<double>(i); }
  Eigen::VectorXd points() const;
};

enum class PotentialKind {
  /// V = E_k [ -(beta/2) x^2 + (gamma/4) x^4 ]
  double_well,
  /// V = E_k x^2 / 2
  harmonic,
};

struct PotentialSpec {
  double kinetic_coeff = 1.0;
  double beta = 3.95;
  double gamma = 2.08;
  PotentialKind kind = PotentialKind::double_well;
  Grid grid;

  static PotentialSpec double_well(double beta, double gamma, double half_extent = 4.0,
                                   std::size_t n_points = 2001, double kinetic_coeff = 1.0);
  static PotentialSpec harmonic(double half_extent = 8.0, std::size_t n_points = 2001,
                                double kinetic_coeff = 1.0);

  double potential(double x) const;
  void validate() const;
};

struct ParticleSpectrum {
  Eigen::VectorXd energies;        // ascending
  Eigen::MatrixXd wavefunctions;   // n_states x n_points, trapezoid-normalised
  Eigen::MatrixXd dipole;          // d(k, j) = <psi_k| x |psi_j>, symmetric, d(k, 0) >= 0
  double kinetic_coeff = 1.0;
  Grid grid;
  /// Every computed level moved by less than 1e-6 E_k when the grid was
  /// refined (points doubled, same extent). False when the check was skipped.
  bool grid_converged = false;
  /// Relative change of omega_{1,0} under refinement (of E_0 / E_k for a
  /// single state).
  double transition_refinement_shift = 0.0;
  /// Largest absolute level shift under refinement.
  double max_refinement_shift = 0.0;

  std::size_t n_states() const { return static_cast<std::size_t>(energies.size()); }
  /// omega_{k,j} = E_k - E_j.
  double transition(std::size_t k, std::size_t j) const { return energies(k) - energies(j); }
};

struct SolveOptions {
  bool check_grid_convergence = true;
};

/// Lowest n_states eigenpairs of the discretised H0. Throws GridTooSmall when
/// any retained wavefunction keeps more than 1e-6 of its peak amplitude in
/// the outer 2% of the grid.
ParticleSpectrum solve_bound_states(const PotentialSpec& spec, std::size_t n_states,
                                    SolveOptions options = {});

/// Like solve_bound_states, but widens the grid (constant spacing) until the
/// boundary check passes.
ParticleSpectrum solve_bound_states_auto_extent(PotentialSpec spec, std::size_t n_states,
                                                SolveOptions options = {});

/// Every eigenpair of the discretised problem (all interior grid modes).
/// Intended for small grids; no boundary check.
ParticleSpectrum solve_all_states(const PotentialSpec& spec);

/// |sum_{k=1..n_terms} omega_{k,0} d_{k,0}^2 - E_k/2| / (E_k/2).
double trk_residual(const ParticleSpectrum& spectrum, std::size_t n_terms);

struct NonlocalKernel {
  std::size_t n_levels = 0;
  Eigen::MatrixXd kernel;  // W(x_i, x_j) on the full grid
  Grid grid;

  /// sum_{|i-j| > width} W^2 / sum W^2 (width in grid steps).
  double off_diagonal_fraction(std::size_t width_steps = 3) const;
  /// max |W(x, x') - W(x', x)|.
  double asymmetry() const;
};

/// V is evaluated on the spectrum's own grid.
/// W_n(x, x') = sum_{k, k' < n} psi_k(x) <psi_k|V|psi_k'> psi_k'(x').
NonlocalKernel nonlocal_kernel(const ParticleSpectrum& spectrum, const PotentialSpec& potential,
                               std::size_t n_levels);

struct DerivedCouplings {
  std::size_t N = 1;
  double A0 = 0.0;
  std::vector<double> eta_k;           // eta_k for k = 1..n_transitions
  double eta = 0.0;                    // eta_1
  double D = 0.0;                      // N sum_k omega_{k,0} eta_k^2
  std::vector<double> D_prime_source;  // omega_{k,0} eta_k^2, per transition

  double single_transition_D() const;
  /// D over its single-transition value; 1 when eta vanishes.
  double alpha() const;
};

DerivedCouplings derive_couplings(const ParticleSpectrum& spectrum, double A0, std::size_t N,
                                  std::size_t n_transitions);

/// CSV `k,energy,d_k0`.
void write_spectrum_csv(std::ostream& out, const ParticleSpectrum& spectrum);
/// CSV `x,xprime,W`, every `stride`-th grid point along both axes.
void write_kernel_csv(std::ostream& out, const NonlocalKernel& kernel, std::size_t stride = 1);

}  // namespace gaugekit

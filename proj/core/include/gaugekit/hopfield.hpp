#pragma once

// Hopfield model: photons a_k coupled to a bosonic polarisation field b_k.
// Units hbar = eps0 = 1 with the quantisation volume absorbed into beta, so
// the per-mode coupling is Lambda_k = sqrt(beta w0 / (4 w_k)).
//
// Each wavevector pair (k, -k) splits into two identical two-mode blocks
// under the standing-wave combinations (a_k +- a_-k)/sqrt(2); each of the two
// transverse polarisations contributes another identical copy. A block is:
//
//   Coulomb  w_k a+a + w0 b+b + i w0 Lambda (a + a+)(b - b+) + w0 Lambda^2 (a + a+)^2
//   dipole   w_k a+a + w0 b+b - i w_k Lambda (a - a+)(b + b+) + w_k Lambda^2 (b + b+)^2

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "gaugekit/dicke_thermo.hpp"
#include "gaugekit/quadratic.hpp"

namespace gaugekit {

struct HopfieldParams {
  double omega0 = 1.0;
  double beta = 0.0;
  std::vector<double> dispersion;  // photon frequencies w_k
  std::vector<double> lambda_k;    // derived couplings, one per w_k

  /// Builds the params and derives lambda_k from (omega0, beta, dispersion).
  static HopfieldParams make(double omega0, double beta, std::vector<double> dispersion);

  static double coupling(double omega0, double beta, double omega_k);

  /// Checks w_k > 0, omega0 > 0, beta >= 0 and that every stored lambda_k
  /// equals its derived value exactly.
  void validate() const;
};

/// n log-spaced ratios w_k / w0 in [lo, hi], times w0.
std::vector<double> log_dispersion(double omega0, double lo, double hi, std::size_t n);
/// w_k = c |k| over the given k values.
std::vector<double> linear_dispersion(const std::vector<double>& k, double c);

QuadraticBosonModel build_block_cg(const HopfieldParams& p, std::size_t k_index);
QuadraticBosonModel build_block_dg(const HopfieldParams& p, std::size_t k_index);

struct DispersionRow {
  double omega_k = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  int degeneracy = 2;  // transverse polarisations
};

/// Reference branches for every mode, sorted by w_k.
std::vector<DispersionRow> polariton_dispersion(const HopfieldParams& p, std::size_t threads = 1);

/// |w_k^2 - w^2 [1 + beta w0^2 / (w0^2 - w^2)]| / w_k^2 for one branch value.
double dielectric_residual(double omega_k, double omega, double omega0, double beta);

struct DickeHopfieldBlock {
  HopfieldParams params;  // single mode: w_k = wc, w0 = wx, Lambda = lambda
  QuadraticBosonModel block;
  PolaritonPair branches;
};

/// Dilute-limit Dicke model (gi-coulomb) as a one-mode Hopfield block.
DickeHopfieldBlock dicke_as_hopfield(const ThermoParams& p);

/// CSV `omega_k,w_lower,w_upper,degeneracy`.
void write_dispersion_csv(std::ostream& out, const std::vector<DispersionRow>& rows);

}  // namespace gaugekit

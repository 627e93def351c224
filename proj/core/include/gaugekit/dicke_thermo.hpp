#pragma once

// Dicke model in the dilute limit (N -> infinity, eta -> 0, eta sqrt(N) = lambda).
// After Holstein-Primakoff bosonisation every gauge is a two-oscillator
// quadratic model; photon = mode a, matter = mode b, hbar = 1:
//
//   dipole            wc a+a + wx b+b + i lambda wc (a+ - a)(b + b+) + wc lambda^2 (b + b+)^2
//   gi-coulomb        wc a+a + wx b+b - i wx lambda (b+ - b)(a + a+) + D (a + a+)^2,  D = wx lambda^2
//   standard-coulomb  same as gi-coulomb with D' = alpha D
//
// Branch frequencies from diagonalize_quadratic are the reference values.
// The closed forms below reproduce the published expressions verbatim and
// are only ever compared against that reference.

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "gaugekit/operators.hpp"
#include "gaugekit/quadratic.hpp"

namespace gaugekit {

enum class ThermoGauge { dipole, gi_coulomb, standard_coulomb };

std::string to_string(ThermoGauge gauge);

struct ThermoParams {
  double omega_c = 1.0;
  double omega_x = 1.0;
  double lambda = 0.0;
  double alpha = 2.0;
  ThermoGauge gauge = ThermoGauge::dipole;

  /// wx lambda^2, the single-transition diamagnetic coefficient.
  double D() const { return omega_x * lambda * lambda; }
  /// alpha wx lambda^2.
  double D_prime() const { return alpha * D(); }

  void validate() const;
};

QuadraticBosonModel build_bilinear(const ThermoParams& p);

/// diagonalize_quadratic(build_bilinear(p)).
PolaritonPair polariton_branches(const ThermoParams& p);

/// Published Coulomb-gauge expression with w~c = sqrt(wc (wc + 4 D)); D is
/// wx lambda^2 for gi-coulomb and alpha wx lambda^2 for standard-coulomb.
PolaritonPair closed_form_cg(const ThermoParams& p);

/// Published dipole-gauge expression with w~x = sqrt(wx (wx + 4 lambda^2 / wc))
/// and discriminant term 4 lambda^2 wx wc, evaluated exactly as printed.
/// It does not agree with the dipole-gauge reference branches in general.
PolaritonPair closed_form_dg(const ThermoParams& p);

struct ClosedFormReport {
  PolaritonPair printed;
  PolaritonPair reference;
  double max_abs_difference = 0.0;
};

/// Printed closed form (cg or dg per p.gauge) against the reference branches.
ClosedFormReport closed_form_report(const ThermoParams& p);

/// Uniform static current response: -wx lambda^2 + (diamagnetic coefficient
/// of the selected Coulomb gauge). Zero for the dipole gauge.
double trk_thermo_residual(const ThermoParams& p);

enum class UnitarySide {
  /// U (w_matter b+b) U+ + w_photon a+a  (Coulomb-type construction)
  matter,
  /// U+ (w_photon a+a) U + w_matter b+b  (dipole-type construction)
  photon,
};

/// U = exp[i coupling (a + a+)(b + b+)] on Fock(cutoff) (x) Fock(cutoff),
/// by spectral exponentiation of the full generator.
OperatorMatrix limit_unitary(double coupling, int cutoff);

/// Two-oscillator Hamiltonian obtained by conjugating one bare oscillator
/// with U. U is applied through its spectral factors (the generator is a
/// product of two single-mode quadratures), so no full-size exponential is
/// formed.
OperatorMatrix build_two_mode_via_unitary(double omega_photon, double omega_matter,
                                          double coupling, UnitarySide side, int cutoff);

/// build_two_mode_via_unitary(wc, wx, lambda, matter, cutoff) for p.
OperatorMatrix build_via_limit_unitary(const ThermoParams& p, int cutoff);

/// Largest Hilbert-space dimension accepted by the unitary constructions.
inline constexpr std::size_t kTwoModeDimCap = 4096;

/// The lowest `count` gaps E_i - E_0, i = 1..count.
std::vector<double> excitation_gaps(const OperatorMatrix& h, std::size_t count);

struct SpectrumRow {
  double lambda = 0.0;
  double dg_lo = 0.0, dg_hi = 0.0;
  double cg_lo = 0.0, cg_hi = 0.0;
  double scg_lo = 0.0, scg_hi = 0.0;
  bool stable = true;
};

struct SpectrumTable {
  double omega_c = 1.0;
  double omega_x = 1.0;
  double alpha = 2.0;
  bool printed = false;  // rows hold the printed closed forms, not reference values
  std::vector<SpectrumRow> rows;
};

/// start, start + step, ... up to stop (inclusive within step * 1e-9).
std::vector<double> lambda_range(double start, double stop, double step);

/// Reference branches for all three gauges at every lambda (sorted by lambda).
SpectrumTable sweep_branches(const std::vector<double>& lambda_grid, double omega_x, double alpha,
                         double omega_c = 1.0, std::size_t threads = 1);

/// Same grid evaluated with the printed closed forms (dg, cg with D, cg with D').
SpectrumTable sweep_branches_printed(const std::vector<double>& lambda_grid, double omega_x,
                                 double alpha, double omega_c = 1.0);

/// CSV `lambda,w_dg_lo,w_dg_hi,w_cg_lo,w_cg_hi,w_scg_lo,w_scg_hi`.
void write_spectrum_table_csv(std::ostream& out, const SpectrumTable& table);

}  // namespace gaugekit

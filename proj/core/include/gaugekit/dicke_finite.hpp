#pragma once

// Finite-N Dicke Hamiltonians on photon (x) collective-spin space, hbar = 1:
//
//   standard Coulomb   wc a+a + wx (Jz + j) + 2 wx eta (a+ + a) Jy + D (a+ + a)^2
//   gauge-invariant    wc a+a + j wx + wx { Jz cos[2 eta (a+ + a)] + Jy sin[2 eta (a+ + a)] }
//   Coulomb
//   dipole             wc a+a + wx (Jz + j) + 2 i eta wc (a+ - a) Jx + 4 eta^2 wc Jx^2
//
// The gauge unitary is U = exp[2 i eta (a + a+) Jx]; the gauge-invariant
// Coulomb form equals U [wx (Jz + j)] U+ + wc a+a, and U+ maps it onto the
// dipole form once the photon cutoff is converged.

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "gaugekit/operators.hpp"

namespace gaugekit {

struct DickeFiniteParams {
  int N = 1;
  double omega_c = 1.0;
  double omega_x = 1.0;
  double eta = 0.0;
  /// Diamagnetic coefficient of the standard Coulomb model.
  double D = 0.0;
  int n_max = 16;
  std::size_t dim_cap = 4096;

  double j() const { return 0.5 * N; }
  std::size_t dimension() const {
    return static_cast<std::size_t>(n_max + 1) * static_cast<std::size_t>(N + 1);
  }

  /// alpha N wx eta^2: the single-transition value scaled by alpha.
  static double default_D(int N, double omega_x, double eta, double alpha = 2.0);

  /// Throws InvalidArgument / DimensionCapExceeded.
  void validate() const;
};

enum class DickeGauge { standard_coulomb, gi_coulomb, dipole };

std::string to_string(DickeGauge gauge);

OperatorMatrix build_standard_cg(const DickeFiniteParams& p);
/// Trigonometric form; cos/sin evaluated by spectral calculus.
OperatorMatrix build_gi_cg(const DickeFiniteParams& p);
/// U [wx (Jz + j)] U+ + wc a+a with U from build_gauge_unitary.
OperatorMatrix build_gi_cg_via_unitary(const DickeFiniteParams& p);
OperatorMatrix build_dg(const DickeFiniteParams& p, bool self_polarization = true);
OperatorMatrix build_gauge_unitary(const DickeFiniteParams& p);
OperatorMatrix build(DickeGauge gauge, const DickeFiniteParams& p);

/// exp[i pi (a+a + Jz + j)], diagonal with entries +-1.
OperatorMatrix generalized_parity(const DickeFiniteParams& p);

struct GaugeHamiltonianSet {
  OperatorMatrix standard_cg;
  OperatorMatrix gi_cg;
  OperatorMatrix dg;
  OperatorMatrix unitary_U;
};

GaugeHamiltonianSet build_gauge_set(const DickeFiniteParams& p);

/// max(16, ceil(40 eta^2 N)).
int initial_cutoff(const DickeFiniteParams& p);

struct ConvergencePolicy {
  double tolerance = 1e-8;  // in units of omega_c
  int step = 8;
};

struct ConvergedSpectrum {
  DickeGauge gauge = DickeGauge::dipole;
  std::vector<double> eigenvalues;
  std::vector<bool> converged;
  /// Last |E(n_max) - E(n_max - step)| per level.
  std::vector<double> last_change;
  int n_max = 0;

  bool all_converged() const;
};

/// Lowest m levels, growing the cutoff from max(p.n_max, initial_cutoff(p))
/// in steps until every level moves less than tolerance * omega_c. When the
/// dimension cap stops the growth, the unconverged levels are flagged.
ConvergedSpectrum converged_spectrum(DickeGauge gauge, std::size_t m, const DickeFiniteParams& p,
                                     ConvergencePolicy policy = {});

struct SpectrumComparison {
  ConvergedSpectrum a;
  ConvergedSpectrum b;
  std::vector<double> difference;  // |a_i - b_i|
  std::vector<bool> converged;     // both sides converged on level i

  double max_difference() const;
  /// max difference restricted to levels converged on both sides.
  double max_converged_difference() const;
};

SpectrumComparison compare_spectra(DickeGauge a, DickeGauge b, std::size_t m,
                                   const DickeFiniteParams& p, ConvergencePolicy policy = {});

/// Lowest-m comparison of two fixed matrices on the same basis; no cutoff
/// certificate (every level reported converged).
SpectrumComparison compare_spectra(const OperatorMatrix& a, const OperatorMatrix& b,
                                   std::size_t m);

/// CSV `level,standard_cg,gi_cg,dg`; the three spectra must have equal length.
void write_spectra_csv(std::ostream& out, const ConvergedSpectrum& standard_cg,
                       const ConvergedSpectrum& gi_cg, const ConvergedSpectrum& dg);

}  // namespace gaugekit

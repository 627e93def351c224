#include "gaugekit/dicke_thermo.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "gaugekit/error.hpp"
#include "gaugekit/format.hpp"
#include "gaugekit/parallel.hpp"

namespace gaugekit {

namespace {

constexpr Complex kI{0.0, 1.0};

PolaritonPair from_squares(double minus_sq, double plus_sq, bool real_discriminant) {
  PolaritonPair out;
  out.stable = real_discriminant && minus_sq >= 0.0;
  out.lower = std::sqrt(std::max(0.0, minus_sq));
  out.upper = std::sqrt(std::max(0.0, plus_sq));
  return out;
}

// Real symmetric eigendecomposition of a single-mode quadrature a + a+.
struct QuadratureSpectrum {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
};

QuadratureSpectrum quadrature_spectrum(int cutoff) {
  const OperatorMatrix a = annihilator(cutoff);
  const Eigen::MatrixXd x = (a.entries() + a.entries().adjoint()).real();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(x);
  if (solver.info() != Eigen::Success) {
    throw EigenDecompositionError("quadrature eigensolve failed");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

void check_cutoff(int cutoff) {
  if (cutoff < 12) throw InvalidArgument("cutoff", "per-mode cutoff must be >= 12");
  const auto dim = static_cast<std::size_t>(cutoff + 1) * static_cast<std::size_t>(cutoff + 1);
  if (dim > kTwoModeDimCap) throw DimensionCapExceeded(dim, kTwoModeDimCap);
}

}  // namespace

std::string to_string(ThermoGauge gauge) {
  switch (gauge) {
    case ThermoGauge::dipole: return "dipole";
    case ThermoGauge::gi_coulomb: return "gi-coulomb";
    case ThermoGauge::standard_coulomb: return "standard-coulomb";
  }
  return "unknown";
}

void ThermoParams::validate() const {
  if (!(omega_c > 0.0)) throw InvalidArgument("wc", "photon frequency must be > 0");
  if (!(omega_x > 0.0)) throw InvalidArgument("wx", "matter frequency must be > 0");
  if (!(lambda >= 0.0)) throw InvalidArgument("lambda", "coupling must be >= 0");
  if (!(alpha >= 1.0)) throw InvalidArgument("alpha", "D'/D ratio must be >= 1");
}

QuadraticBosonModel build_bilinear(const ThermoParams& p) {
  p.validate();
  QuadraticBosonModel m;
  m.omega_a = p.omega_c;
  m.omega_b = p.omega_x;
  m.coupling = p.lambda;
  switch (p.gauge) {
    case ThermoGauge::dipole:
      m.coupling_form = CouplingForm::pa_xb;
      m.quad_on = Mode::b;
      m.quad_coeff = p.omega_c * p.lambda * p.lambda;
      break;
    case ThermoGauge::gi_coulomb:
      m.coupling_form = CouplingForm::xa_pb;
      m.quad_on = Mode::a;
      m.quad_coeff = p.D();
      break;
    case ThermoGauge::standard_coulomb:
      m.coupling_form = CouplingForm::xa_pb;
      m.quad_on = Mode::a;
      m.quad_coeff = p.D_prime();
      break;
  }
  return m;
}

PolaritonPair polariton_branches(const ThermoParams& p) {
  return diagonalize_quadratic(build_bilinear(p));
}

PolaritonPair closed_form_cg(const ThermoParams& p) {
  p.validate();
  double dia = 0.0;
  switch (p.gauge) {
    case ThermoGauge::gi_coulomb: dia = p.D(); break;
    case ThermoGauge::standard_coulomb: dia = p.D_prime(); break;
    case ThermoGauge::dipole:
      throw InvalidArgument("gauge", "the Coulomb closed form needs a Coulomb gauge");
  }
  const double wc = p.omega_c, wx = p.omega_x;
  const double wc_tilde_sq = wc * (wc + 4.0 * dia);
  const double sum = wc_tilde_sq + wx * wx;
  const double disc = sum * sum - 4.0 * wc * wc * wx * wx;
  const double root = std::sqrt(std::max(0.0, disc));
  return from_squares(0.5 * (sum - root), 0.5 * (sum + root), disc >= 0.0);
}

PolaritonPair closed_form_dg(const ThermoParams& p) {
  p.validate();
  if (p.gauge != ThermoGauge::dipole) {
    throw InvalidArgument("gauge", "the dipole closed form needs the dipole gauge");
  }
  const double wc = p.omega_c, wx = p.omega_x, l2 = p.lambda * p.lambda;
  const double wx_tilde_sq = wx * (wx + 4.0 * l2 / wc);
  const double sum = wx_tilde_sq + wc * wc;
  const double diff = wx_tilde_sq - wc * wc;
  const double disc = diff * diff + 4.0 * l2 * wx * wc;
  const double root = std::sqrt(disc);
  return from_squares(0.5 * (sum - root), 0.5 * (sum + root), true);
}

ClosedFormReport closed_form_report(const ThermoParams& p) {
  ClosedFormReport r;
  r.printed = p.gauge == ThermoGauge::dipole ? closed_form_dg(p) : closed_form_cg(p);
  r.reference = polariton_branches(p);
  r.max_abs_difference = std::max(std::abs(r.printed.lower - r.reference.lower),
                                  std::abs(r.printed.upper - r.reference.upper));
  return r;
}

double trk_thermo_residual(const ThermoParams& p) {
  p.validate();
  // (wx lambda)^2 / wx, written so that it is bit-identical to D().
  const double paramagnetic = p.omega_x * p.lambda * p.lambda;
  switch (p.gauge) {
    case ThermoGauge::gi_coulomb: return -paramagnetic + p.D();
    case ThermoGauge::standard_coulomb: return -paramagnetic + p.D_prime();
    case ThermoGauge::dipole: return 0.0;
  }
  return 0.0;
}

OperatorMatrix limit_unitary(double coupling, int cutoff) {
  check_cutoff(cutoff);
  const OperatorMatrix a = annihilator(cutoff);
  const OperatorMatrix x = a + a.adjoint();
  return hermitian_function(coupling * tensor(x, x),
                            [](double g) { return std::exp(kI * g); });
}

OperatorMatrix build_two_mode_via_unitary(double omega_photon, double omega_matter,
                                          double coupling, UnitarySide side, int cutoff) {
  check_cutoff(cutoff);
  if (!(omega_photon > 0.0) || !(omega_matter > 0.0)) {
    throw InvalidArgument("omega", "frequencies must be > 0");
  }
  // X = V diag(x) V^T for both modes, so U = (V (x) V) diag(e^{i g x_i x_j}) (V (x) V)^T.
  // The conjugated oscillator only acts on one factor, which keeps the
  // middle matrix block-diagonal in the other factor's quadrature index.
  const QuadratureSpectrum q = quadrature_spectrum(cutoff);
  const Eigen::Index n = cutoff + 1;
  const Eigen::MatrixXd& v = q.vectors;
  const Eigen::VectorXd& xs = q.values;

  Eigen::MatrixXd number = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) number(k, k) = static_cast<double>(k);
  const Eigen::MatrixXd rotated_number = v.transpose() * number * v;

  // For side == matter the conjugated oscillator is b (second factor) and the
  // phases read e^{i g x_i (y_j - y_j')}; for side == photon it is a (first
  // factor) under U^dagger: e^{-i g y_j (x_i - x_i')}.
  const double sign = side == UnitarySide::matter ? 1.0 : -1.0;
  const double omega_conj = side == UnitarySide::matter ? omega_matter : omega_photon;

  ComplexMatrix conj_part = ComplexMatrix::Zero(n * n, n * n);
  ComplexMatrix block(n, n);
  for (Eigen::Index s = 0; s < n; ++s) {  // eigen-index of the spectator quadrature
    for (Eigen::Index r = 0; r < n; ++r) {
      for (Eigen::Index c = 0; c < n; ++c) {
        const double phase = sign * coupling * xs(s) * (xs(r) - xs(c));
        block(r, c) = rotated_number(r, c) * std::exp(kI * phase);
      }
    }
    const ComplexMatrix back = v * block * v.transpose();
    // Outer product of the spectator eigenvector with itself.
    const Eigen::VectorXd spectator = v.col(s);
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index pp = 0; pp < n; ++pp) {
        const double w = spectator(p) * spectator(pp);
        if (side == UnitarySide::matter) {
          // spectator is the photon (slow index)
          conj_part.block(p * n, pp * n, n, n) += w * back;
        } else {
          // spectator is the matter mode (fast index)
          for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index ii = 0; ii < n; ++ii) {
              conj_part(i * n + p, ii * n + pp) += w * back(i, ii);
            }
          }
        }
      }
    }
  }

  const Eigen::Index dim = n * n;
  ComplexMatrix h = omega_conj * conj_part;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const Eigen::Index idx = i * n + j;
      // bare (unconjugated) oscillator
      h(idx, idx) += side == UnitarySide::matter ? omega_photon * static_cast<double>(i)
                                                 : omega_matter * static_cast<double>(j);
    }
  }
  h = (0.5 * (h + h.adjoint())).eval();
  (void)dim;
  const auto basis = CompositeBasis::fock(cutoff) * CompositeBasis::fock(cutoff);
  return OperatorMatrix(basis, std::move(h));
}

OperatorMatrix build_via_limit_unitary(const ThermoParams& p, int cutoff) {
  p.validate();
  return build_two_mode_via_unitary(p.omega_c, p.omega_x, p.lambda, UnitarySide::matter, cutoff);
}

std::vector<double> excitation_gaps(const OperatorMatrix& h, std::size_t count) {
  const RealVector e = eigenvalues_sym(h, count + 1);
  std::vector<double> gaps;
  for (Eigen::Index i = 1; i < e.size(); ++i) gaps.push_back(e(i) - e(0));
  return gaps;
}

std::vector<double> lambda_range(double start, double stop, double step) {
  if (!(step > 0.0)) throw InvalidArgument("lambda", "step must be > 0");
  if (!(stop >= start)) throw InvalidArgument("lambda", "range must be increasing");
  const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = start + step * static_cast<double>(i);
  return out;
}

namespace {
void check_grid(const std::vector<double>& grid) {
  if (!std::is_sorted(grid.begin(), grid.end())) {
    throw InvalidArgument("lambda", "grid must be monotone increasing");
  }
}
}  // namespace

SpectrumTable sweep_branches(const std::vector<double>& lambda_grid, double omega_x, double alpha,
                         double omega_c, std::size_t threads) {
  check_grid(lambda_grid);
  SpectrumTable table{omega_c, omega_x, alpha, false, {}};
  table.rows = parallel_map(lambda_grid.size(), threads, [&](std::size_t i) {
    ThermoParams p{omega_c, omega_x, lambda_grid[i], alpha, ThermoGauge::dipole};
    const PolaritonPair dg = polariton_branches(p);
    p.gauge = ThermoGauge::gi_coulomb;
    const PolaritonPair cg = polariton_branches(p);
    p.gauge = ThermoGauge::standard_coulomb;
    const PolaritonPair scg = polariton_branches(p);
    return SpectrumRow{lambda_grid[i], dg.lower,  dg.upper,  cg.lower, cg.upper,
                       scg.lower,      scg.upper, dg.stable && cg.stable && scg.stable};
  });
  return table;
}

SpectrumTable sweep_branches_printed(const std::vector<double>& lambda_grid, double omega_x,
                                 double alpha, double omega_c) {
  check_grid(lambda_grid);
  SpectrumTable table{omega_c, omega_x, alpha, true, {}};
  for (double lambda : lambda_grid) {
    ThermoParams p{omega_c, omega_x, lambda, alpha, ThermoGauge::dipole};
    const PolaritonPair dg = closed_form_dg(p);
    p.gauge = ThermoGauge::gi_coulomb;
    const PolaritonPair cg = closed_form_cg(p);
    p.gauge = ThermoGauge::standard_coulomb;
    const PolaritonPair scg = closed_form_cg(p);
    table.rows.push_back({lambda, dg.lower, dg.upper, cg.lower, cg.upper, scg.lower, scg.upper,
                          dg.stable && cg.stable && scg.stable});
  }
  return table;
}

void write_spectrum_table_csv(std::ostream& out, const SpectrumTable& table) {
  out << "lambda,w_dg_lo,w_dg_hi,w_cg_lo,w_cg_hi,w_scg_lo,w_scg_hi\n";
  for (const auto& r : table.rows) {
    out << format_number(r.lambda) << ',' << format_number(r.dg_lo) << ','
        << format_number(r.dg_hi) << ',' << format_number(r.cg_lo) << ','
        << format_number(r.cg_hi) << ',' << format_number(r.scg_lo) << ','
        << format_number(r.scg_hi) << '\n';
  }
}

}  // namespace gaugekit

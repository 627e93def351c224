#include "gaugekit/hopfield.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "gaugekit/error.hpp"
#include "gaugekit/format.hpp"
#include "gaugekit/parallel.hpp"

namespace gaugekit {

double HopfieldParams::coupling(double omega0, double beta, double omega_k) {
  return std::sqrt(beta * omega0 / (4.0 * omega_k));
}

HopfieldParams HopfieldParams::make(double omega0, double beta, std::vector<double> dispersion) {
  HopfieldParams p;
  p.omega0 = omega0;
  p.beta = beta;
  p.dispersion = std::move(dispersion);
  if (!(omega0 > 0.0)) throw InvalidArgument("w0", "matter resonance must be > 0");
  if (!(beta >= 0.0)) throw InvalidArgument("beta", "polarizability must be >= 0");
  for (double wk : p.dispersion) {
    if (!(wk > 0.0)) throw InvalidArgument("wk", "photon frequencies must be > 0");
    p.lambda_k.push_back(coupling(omega0, beta, wk));
  }
  return p;
}

void HopfieldParams::validate() const {
  if (!(omega0 > 0.0)) throw InvalidArgument("w0", "matter resonance must be > 0");
  if (!(beta >= 0.0)) throw InvalidArgument("beta", "polarizability must be >= 0");
  if (dispersion.empty()) throw InvalidArgument("wk", "dispersion grid is empty");
  if (lambda_k.size() != dispersion.size()) {
    throw InvalidArgument("lambda_k", "one coupling per photon mode required");
  }
  for (std::size_t i = 0; i < dispersion.size(); ++i) {
    if (!(dispersion[i] > 0.0)) throw InvalidArgument("wk", "photon frequencies must be > 0");
    if (lambda_k[i] != coupling(omega0, beta, dispersion[i])) {
      throw InvalidArgument("lambda_k", "stored coupling differs from sqrt(beta w0 / (4 w_k))");
    }
  }
}

std::vector<double> log_dispersion(double omega0, double lo, double hi, std::size_t n) {
  if (!(lo > 0.0) || !(hi >= lo)) throw InvalidArgument("wk", "need 0 < min <= max");
  if (n < 1) throw InvalidArgument("wk_points", "need at least one point");
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = omega0 * lo;
    return out;
  }
  const double step = std::log(hi / lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = omega0 * lo * std::exp(step * static_cast<double>(i));
  }
  out.back() = omega0 * hi;
  return out;
}

std::vector<double> linear_dispersion(const std::vector<double>& k, double c) {
  if (!(c > 0.0)) throw InvalidArgument("c", "light speed must be > 0");
  std::vector<double> out;
  for (double kv : k) {
    if (kv == 0.0) throw InvalidArgument("k", "k = 0 gives a zero-frequency photon");
    out.push_back(c * std::abs(kv));
  }
  return out;
}

namespace {
void check_index(const HopfieldParams& p, std::size_t k_index) {
  if (k_index >= p.dispersion.size() || k_index >= p.lambda_k.size()) {
    throw InvalidArgument("k_index", "mode index " + std::to_string(k_index) + " out of range");
  }
}
}  // namespace

QuadraticBosonModel build_block_cg(const HopfieldParams& p, std::size_t k_index) {
  check_index(p, k_index);
  const double lam = p.lambda_k[k_index];
  QuadraticBosonModel m;
  m.omega_a = p.dispersion[k_index];
  m.omega_b = p.omega0;
  m.coupling = lam;
  m.coupling_form = CouplingForm::xa_pb;
  m.quad_on = Mode::a;
  m.quad_coeff = p.omega0 * lam * lam;
  return m;
}

QuadraticBosonModel build_block_dg(const HopfieldParams& p, std::size_t k_index) {
  check_index(p, k_index);
  const double lam = p.lambda_k[k_index];
  QuadraticBosonModel m;
  m.omega_a = p.dispersion[k_index];
  m.omega_b = p.omega0;
  m.coupling = lam;
  m.coupling_form = CouplingForm::pa_xb;
  m.quad_on = Mode::b;
  m.quad_coeff = p.dispersion[k_index] * lam * lam;
  return m;
}

std::vector<DispersionRow> polariton_dispersion(const HopfieldParams& p, std::size_t threads) {
  p.validate();
  auto rows = parallel_map(p.dispersion.size(), threads, [&](std::size_t i) {
    const PolaritonPair pair = diagonalize_quadratic(build_block_cg(p, i));
    return DispersionRow{p.dispersion[i], pair.lower, pair.upper, 2};
  });
  std::stable_sort(rows.begin(), rows.end(),
                   [](const DispersionRow& l, const DispersionRow& r) { return l.omega_k < r.omega_k; });
  return rows;
}

double dielectric_residual(double omega_k, double omega, double omega0, double beta) {
  const double w2 = omega * omega;
  const double w02 = omega0 * omega0;
  const double rhs = w2 * (1.0 + beta * w02 / (w02 - w2));
  return std::abs(omega_k * omega_k - rhs) / (omega_k * omega_k);
}

DickeHopfieldBlock dicke_as_hopfield(const ThermoParams& p) {
  p.validate();
  if (p.gauge != ThermoGauge::gi_coulomb) {
    throw InvalidArgument("gauge", "the Hopfield mapping starts from the gi-coulomb model");
  }
  // Lambda = sqrt(beta w0 / (4 wk)) = lambda  <=>  beta = 4 lambda^2 wc / wx.
  const double beta = 4.0 * p.lambda * p.lambda * p.omega_c / p.omega_x;
  DickeHopfieldBlock out;
  out.params = HopfieldParams::make(p.omega_x, beta, {p.omega_c});
  out.block = build_block_cg(out.params, 0);
  out.branches = diagonalize_quadratic(out.block);
  return out;
}

void write_dispersion_csv(std::ostream& out, const std::vector<DispersionRow>& rows) {
  out << "omega_k,w_lower,w_upper,degeneracy\n";
  for (const auto& r : rows) {
    out << format_number(r.omega_k) << ',' << format_number(r.lower) << ','
        << format_number(r.upper) << ',' << r.degeneracy << '\n';
  }
}

}  // namespace gaugekit

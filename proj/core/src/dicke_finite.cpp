#include "gaugekit/dicke_finite.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "gaugekit/error.hpp"
#include "gaugekit/format.hpp"

namespace gaugekit {

namespace {

constexpr Complex kI{0.0, 1.0};

// Single-factor building blocks; products are formed here, in the small
// spaces, and only lifted to the composite space by tensor().
struct Blocks {
  OperatorMatrix a;
  OperatorMatrix number;
  OperatorMatrix x_field;  // a + a+
  OperatorMatrix photon_id;
  SpinOperators spin;
  OperatorMatrix spin_id;
};

Blocks make_blocks(const DickeFiniteParams& p) {
  p.validate();
  Blocks b{annihilator(p.n_max),
           number_operator(p.n_max),
           {},
           identity(CompositeBasis::fock(p.n_max)),
           spin_operators(p.j()),
           identity(CompositeBasis::spin(p.N))};
  b.x_field = b.a + b.a.adjoint();
  return b;
}

OperatorMatrix bare_hamiltonian(const DickeFiniteParams& p, const Blocks& b) {
  return p.omega_c * tensor(b.number, b.spin_id) +
         p.omega_x * tensor(b.photon_id, b.spin.z + p.j() * b.spin_id);
}

std::vector<double> to_std(const RealVector& v) { return {v.data(), v.data() + v.size()}; }

}  // namespace

double DickeFiniteParams::default_D(int N, double omega_x, double eta, double alpha) {
  return alpha * static_cast<double>(N) * omega_x * eta * eta;
}

void DickeFiniteParams::validate() const {
  if (N < 1) throw InvalidArgument("N", "need at least one dipole");
  if (!(omega_c > 0.0)) throw InvalidArgument("wc", "photon frequency must be > 0");
  if (!(omega_x > 0.0)) throw InvalidArgument("wx", "transition frequency must be > 0");
  if (!(eta >= 0.0)) throw InvalidArgument("eta", "coupling must be >= 0");
  if (!(D >= 0.0)) throw InvalidArgument("D", "diamagnetic coefficient must be >= 0");
  if (n_max < 2) throw InvalidArgument("nmax", "photon cutoff must be >= 2");
  if (dimension() > dim_cap) throw DimensionCapExceeded(dimension(), dim_cap);
}

std::string to_string(DickeGauge gauge) {
  switch (gauge) {
    case DickeGauge::standard_coulomb: return "standard_cg";
    case DickeGauge::gi_coulomb: return "gi_cg";
    case DickeGauge::dipole: return "dg";
  }
  return "unknown";
}

OperatorMatrix build_standard_cg(const DickeFiniteParams& p) {
  const Blocks b = make_blocks(p);
  return bare_hamiltonian(p, b) +
         2.0 * p.omega_x * p.eta * tensor(b.x_field, b.spin.y) +
         p.D * tensor(b.x_field * b.x_field, b.spin_id);
}

OperatorMatrix build_gi_cg(const DickeFiniteParams& p) {
  const Blocks b = make_blocks(p);
  const double angle = 2.0 * p.eta;
  const auto cos_x = hermitian_function(b.x_field, [angle](double x) { return Complex(std::cos(angle * x)); });
  const auto sin_x = hermitian_function(b.x_field, [angle](double x) { return Complex(std::sin(angle * x)); });
  const auto full_id = tensor(b.photon_id, b.spin_id);
  return p.omega_c * tensor(b.number, b.spin_id) + (p.j() * p.omega_x) * full_id +
         p.omega_x * (tensor(cos_x, b.spin.z) + tensor(sin_x, b.spin.y));
}

OperatorMatrix build_gauge_unitary(const DickeFiniteParams& p) {
  const Blocks b = make_blocks(p);
  const OperatorMatrix generator = (2.0 * p.eta) * tensor(b.x_field, b.spin.x);
  return hermitian_function(generator, [](double g) { return std::exp(kI * g); });
}

OperatorMatrix build_gi_cg_via_unitary(const DickeFiniteParams& p) {
  const Blocks b = make_blocks(p);
  const OperatorMatrix u = build_gauge_unitary(p);
  const OperatorMatrix matter = p.omega_x * tensor(b.photon_id, b.spin.z + p.j() * b.spin_id);
  OperatorMatrix h = u * matter * u.adjoint() + p.omega_c * tensor(b.number, b.spin_id);
  // Symmetrise away the roundoff of the two dense products.
  return OperatorMatrix(h.basis(), 0.5 * (h.entries() + h.entries().adjoint()));
}

OperatorMatrix build_dg(const DickeFiniteParams& p, bool self_polarization) {
  const Blocks b = make_blocks(p);
  OperatorMatrix h = bare_hamiltonian(p, b) +
                     (2.0 * kI * p.eta * p.omega_c) * tensor(b.a.adjoint() - b.a, b.spin.x);
  if (self_polarization) {
    h += (4.0 * p.eta * p.eta * p.omega_c) * tensor(b.photon_id, b.spin.x * b.spin.x);
  }
  return h;
}

OperatorMatrix build(DickeGauge gauge, const DickeFiniteParams& p) {
  switch (gauge) {
    case DickeGauge::standard_coulomb: return build_standard_cg(p);
    case DickeGauge::gi_coulomb: return build_gi_cg(p);
    case DickeGauge::dipole: return build_dg(p);
  }
  throw InvalidArgument("gauge", "unknown gauge");
}

OperatorMatrix generalized_parity(const DickeFiniteParams& p) {
  p.validate();
  const auto basis = CompositeBasis::fock(p.n_max) * CompositeBasis::spin(p.N);
  const auto dim = static_cast<Eigen::Index>(basis.total_dim());
  ComplexMatrix parity = ComplexMatrix::Zero(dim, dim);
  const Eigen::Index spin_dim = p.N + 1;
  for (Eigen::Index i = 0; i < dim; ++i) {
    // photons + excitations (Jz + j equals the spin index)
    const Eigen::Index quanta = i / spin_dim + i % spin_dim;
    parity(i, i) = quanta % 2 == 0 ? 1.0 : -1.0;
  }
  return OperatorMatrix(basis, std::move(parity));
}

GaugeHamiltonianSet build_gauge_set(const DickeFiniteParams& p) {
  return {build_standard_cg(p), build_gi_cg(p), build_dg(p), build_gauge_unitary(p)};
}

int initial_cutoff(const DickeFiniteParams& p) {
  const double estimate = std::ceil(40.0 * p.eta * p.eta * static_cast<double>(p.N));
  return std::max(16, static_cast<int>(estimate));
}

bool ConvergedSpectrum::all_converged() const {
  return std::all_of(converged.begin(), converged.end(), [](bool c) { return c; });
}

ConvergedSpectrum converged_spectrum(DickeGauge gauge, std::size_t m, const DickeFiniteParams& p,
                                     ConvergencePolicy policy) {
  if (m < 1) throw InvalidArgument("levels", "need at least one level");
  DickeFiniteParams q = p;
  q.n_max = std::max(p.n_max, initial_cutoff(p));
  if (q.dimension() > q.dim_cap) {
    // Start at the largest cutoff the cap allows; levels stay unconverged.
    q.n_max = static_cast<int>(q.dim_cap / static_cast<std::size_t>(q.N + 1)) - 1;
  }
  q.validate();
  if (m > q.dimension()) throw InvalidArgument("levels", "more levels than basis states");

  const double tol = policy.tolerance * p.omega_c;
  RealVector current = eigenvalues_sym(build(gauge, q), m);
  RealVector change = RealVector::Constant(static_cast<Eigen::Index>(m),
                                           std::numeric_limits<double>::infinity());

  while (true) {
    DickeFiniteParams next = q;
    next.n_max = q.n_max + policy.step;
    if (next.dimension() > next.dim_cap) break;
    const RealVector refined = eigenvalues_sym(build(gauge, next), m);
    change = (refined - current).cwiseAbs();
    current = refined;
    q = next;
    if (change.maxCoeff() < tol) break;
  }

  ConvergedSpectrum out;
  out.gauge = gauge;
  out.n_max = q.n_max;
  out.eigenvalues = to_std(current);
  out.last_change = to_std(change);
  for (double c : out.last_change) out.converged.push_back(c < tol);
  return out;
}

double SpectrumComparison::max_difference() const {
  return difference.empty() ? 0.0 : *std::max_element(difference.begin(), difference.end());
}

double SpectrumComparison::max_converged_difference() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < difference.size(); ++i) {
    if (converged[i]) worst = std::max(worst, difference[i]);
  }
  return worst;
}

namespace {
SpectrumComparison combine(ConvergedSpectrum a, ConvergedSpectrum b) {
  SpectrumComparison out;
  for (std::size_t i = 0; i < a.eigenvalues.size(); ++i) {
    out.difference.push_back(std::abs(a.eigenvalues[i] - b.eigenvalues[i]));
    out.converged.push_back(a.converged[i] && b.converged[i]);
  }
  out.a = std::move(a);
  out.b = std::move(b);
  return out;
}
}  // namespace

SpectrumComparison compare_spectra(DickeGauge a, DickeGauge b, std::size_t m,
                                   const DickeFiniteParams& p, ConvergencePolicy policy) {
  return combine(converged_spectrum(a, m, p, policy), converged_spectrum(b, m, p, policy));
}

SpectrumComparison compare_spectra(const OperatorMatrix& a, const OperatorMatrix& b,
                                   std::size_t m) {
  if (!(a.basis() == b.basis())) throw InvalidArgument("basis", "spectra live on different bases");
  auto fixed = [m](const OperatorMatrix& h) {
    ConvergedSpectrum s;
    s.eigenvalues = to_std(eigenvalues_sym(h, m));
    s.converged.assign(s.eigenvalues.size(), true);
    s.last_change.assign(s.eigenvalues.size(), 0.0);
    return s;
  };
  return combine(fixed(a), fixed(b));
}

void write_spectra_csv(std::ostream& out, const ConvergedSpectrum& standard_cg,
                       const ConvergedSpectrum& gi_cg, const ConvergedSpectrum& dg) {
  const std::size_t n = standard_cg.eigenvalues.size();
  if (gi_cg.eigenvalues.size() != n || dg.eigenvalues.size() != n) {
    throw InvalidArgument("levels", "spectra have different lengths");
  }
  out << "level,standard_cg,gi_cg,dg\n";
  for (std::size_t i = 0; i < n; ++i) {
    out << i << ',' << format_number(standard_cg.eigenvalues[i]) << ','
        << format_number(gi_cg.eigenvalues[i]) << ',' << format_number(dg.eigenvalues[i])
        << '\n';
  }
}

}  // namespace gaugekit

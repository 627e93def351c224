#include "verify.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <sstream>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "commands.hpp"
#include "json_writer.hpp"
#include "gaugekit/dicke_finite.hpp"
#include "gaugekit/dicke_thermo.hpp"
#include "gaugekit/dipole1d.hpp"
#include "gaugekit/hopfield.hpp"
#include "gaugekit/operators.hpp"
#include "gaugekit/quadratic.hpp"

namespace gaugekit::cli {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

CheckResult verdict(bool pass, std::string detail) { return {pass, std::move(detail)}; }

const std::vector<double> kDetunings{0.5, 0.8, 1.0, 1.5};

QuadraticBosonModel dipole_pair(double wc, double wx, double lambda) {
  return {wc, wx, lambda, wc * lambda * lambda, Mode::b, CouplingForm::pa_xb};
}

QuadraticBosonModel coulomb_pair(double wc, double wx, double lambda) {
  return {wc, wx, lambda, wx * lambda * lambda, Mode::a, CouplingForm::xa_pb};
}

// operator-core -------------------------------------------------------------

CheckResult su2_algebra() {
  double worst = 0.0;
  for (int two_j = 1; two_j <= 20; ++two_j) {
    const auto s = spin_operators(0.5 * two_j);
    const Complex i(0.0, 1.0);
    worst = std::max({worst, (commutator(s.x, s.y) - i * s.z).max_abs(),
                      (commutator(s.y, s.z) - i * s.x).max_abs(),
                      (commutator(s.z, s.x) - i * s.y).max_abs()});
  }
  return verdict(worst < 1e-13, "max |[Ja, Jb] - i eps Jc| over j <= 10: " + fmt(worst) +
                                    " (tol 1e-13)");
}

CheckResult spectral_calculus() {
  std::mt19937_64 rng(0x5eed);
  std::normal_distribution<double> normal;
  double worst = 0.0;
  for (int dim : {2, 7, 16, 33, 64}) {
    ComplexMatrix a(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r)
      for (Eigen::Index c = 0; c < dim; ++c) a(r, c) = Complex(normal(rng), normal(rng));
    const ComplexMatrix h = 0.5 * (a + a.adjoint());
    const CompositeBasis basis({{FactorKind::fock, static_cast<std::size_t>(dim)}});
    const auto spectral =
        hermitian_function(OperatorMatrix(basis, h), [](double x) { return std::exp(Complex(0.0, -x)); });
    const ComplexMatrix reference = (Complex(0.0, -1.0) * h).exp();
    worst = std::max(worst, (spectral.entries() - reference).cwiseAbs().maxCoeff());
  }
  return verdict(worst < 1e-10, "exp(-iH) spectral vs scaling-and-squaring, dims 2..64: " +
                                    fmt(worst) + " (tol 1e-10)");
}

CheckResult decoupled_bare_frequencies() {
  double worst = 0.0;
  for (double wa : {0.3, 1.0, 2.7}) {
    for (double wb : {0.5, 1.0, 4.1}) {
      for (auto form : {CouplingForm::pa_xb, CouplingForm::xa_pb}) {
        const auto p = diagonalize_quadratic({wa, wb, 0.0, 0.0, Mode::a, form});
        worst = std::max({worst, std::abs(p.lower - std::min(wa, wb)) / std::min(wa, wb),
                          std::abs(p.upper - std::max(wa, wb)) / std::max(wa, wb)});
      }
    }
  }
  const double eps = 4.0 * std::numeric_limits<double>::epsilon();
  return verdict(worst <= eps, "relative error of bare frequencies: " + fmt(worst) +
                                   " (tol 4 eps)");
}

double characteristic_residual(const QuadraticBosonModel& m, double w) {
  const Eigen::Matrix4cd a = dynamical_matrix(m).cast<Complex>();
  const Eigen::Matrix4cd shifted = Complex(0.0, w) * Eigen::Matrix4cd::Identity() - a;
  return std::abs(shifted.determinant()) / std::max(1.0, std::pow(w, 4));
}

CheckResult characteristic_roots() {
  double worst = 0.0;
  for (double wx : kDetunings) {
    for (int i = 0; i <= 20; ++i) {
      const double lambda = 0.1 * i;
      for (const auto& m : {dipole_pair(1.0, wx, lambda), coulomb_pair(1.0, wx, lambda)}) {
        const auto p = diagonalize_quadratic(m);
        if (!p.stable) continue;
        worst = std::max({worst, characteristic_residual(m, p.lower),
                          characteristic_residual(m, p.upper)});
      }
    }
  }
  return verdict(worst < 1e-9, "|det(i w - A)| at both frequencies: " + fmt(worst) + " (tol 1e-9)");
}

CheckResult gauge_pair_identity() {
  double worst = 0.0;
  for (double wx : kDetunings) {
    for (double lambda : lambda_range(0.0, 2.0, 0.01)) {
      const auto a = diagonalize_quadratic(dipole_pair(1.0, wx, lambda));
      const auto b = diagonalize_quadratic(coulomb_pair(1.0, wx, lambda));
      worst = std::max({worst, std::abs(a.lower - b.lower), std::abs(a.upper - b.upper)});
    }
  }
  return verdict(worst < 1e-10, "dipole vs gauge-invariant Coulomb pair: " + fmt(worst) +
                                    " (tol 1e-10)");
}

// dipole1d ------------------------------------------------------------------

const PotentialSpec& well() {
  static const PotentialSpec spec = PotentialSpec::double_well(3.95, 2.08);
  return spec;
}

const ParticleSpectrum& ten_states() {
  static const ParticleSpectrum s = solve_bound_states_auto_extent(well(), 10);
  return s;
}

CheckResult kernel_nonlocality_trend() {
  std::vector<double> f;
  std::string values;
  for (std::size_t n = 2; n <= 10; ++n) {
    f.push_back(nonlocal_kernel(ten_states(), well(), n).off_diagonal_fraction());
    values += " " + std::to_string(n) + ":" + fmt(f.back());
  }
  bool monotone = true;
  std::string breaks;
  for (std::size_t i = 1; i < f.size(); ++i) {
    if (f[i] > f[i - 1]) {
      monotone = false;
      breaks += " rises at n=" + std::to_string(i + 2);
    }
  }
  return verdict(monotone, "off-diagonal fraction n=2..10 nonincreasing:" + values +
                               (monotone ? "" : ";" + breaks));
}

CheckResult trk_full_basis() {
  const auto& s = ten_states();
  double prev = 1.0;
  bool monotone = true;
  for (std::size_t n = 1; n < s.n_states(); ++n) {
    const double r = trk_residual(s, n);
    monotone = monotone && r <= prev;
    prev = r;
  }
  return verdict(monotone && prev < 1e-2, "TRK residual with 9 transitions: " + fmt(prev) +
                                              " (tol 1e-2), nonincreasing: " +
                                              (monotone ? "yes" : "no"));
}

CheckResult grid_refinement() {
  const auto s = solve_bound_states(PotentialSpec::double_well(3.95, 2.08, 4.0, 8001), 2);
  return verdict(s.transition_refinement_shift < 1e-6,
                 "omega_10 relative change 8001 -> 16001 points: " +
                     fmt(s.transition_refinement_shift) + " (tol 1e-6)");
}

CheckResult parity_selection() {
  const auto& s = ten_states();
  double worst = 0.0;
  for (Eigen::Index k = 0; k < 10; ++k)
    for (Eigen::Index j = 0; j < 10; ++j)
      if ((k + j) % 2 == 0) worst = std::max(worst, std::abs(s.dipole(k, j)));
  return verdict(worst < 1e-8, "max |d_kj| between equal-parity states: " + fmt(worst) +
                                   " (tol 1e-8)");
}

// dicke-finite --------------------------------------------------------------

DickeFiniteParams finite_params(int N, double eta, int n_max = 16, double wx = 1.0) {
  DickeFiniteParams p;
  p.N = N;
  p.omega_x = wx;
  p.eta = eta;
  p.n_max = n_max;
  p.D = DickeFiniteParams::default_D(N, wx, eta);
  return p;
}

CheckResult finite_gauge_equivalence() {
  double worst = 0.0;
  bool converged = true;
  for (int N : {1, 2, 3}) {
    for (double eta : {0.1, 0.3, 0.5, 1.0}) {
      const auto c = compare_spectra(DickeGauge::gi_coulomb, DickeGauge::dipole, 6, finite_params(N, eta));
      converged = converged && c.a.all_converged() && c.b.all_converged();
      worst = std::max(worst, c.max_difference());
    }
  }
  return verdict(converged && worst < 1e-6, "max |E_gi - E_dg| over lowest 6 levels: " +
                                                fmt(worst) + " (tol 1e-6), all converged: " +
                                                (converged ? "yes" : "no"));
}

CheckResult finite_gauge_violation() {
  bool monotone = true;
  std::string values;
  for (int N : {1, 2, 3}) {
    double prev = 0.0;
    values += " N=" + std::to_string(N) + ":";
    for (double eta : {0.1, 0.3, 0.5, 1.0}) {
      const double dev = compare_spectra(DickeGauge::standard_coulomb, DickeGauge::dipole, 6,
                                         finite_params(N, eta))
                             .max_difference();
      monotone = monotone && dev > prev;
      prev = dev;
      values += " " + fmt(dev);
    }
  }
  return verdict(monotone, "standard vs dipole deviation increasing in eta:" + values);
}

CheckResult finite_parity() {
  double worst = 0.0;
  for (int N : {1, 2, 3}) {
    for (double eta : {0.2, 0.8}) {
      const auto p = finite_params(N, eta, 14);
      const auto parity = generalized_parity(p);
      for (auto gauge : {DickeGauge::standard_coulomb, DickeGauge::gi_coulomb, DickeGauge::dipole}) {
        worst = std::max(worst, commutator(build(gauge, p), parity).max_abs());
      }
    }
  }
  return verdict(worst < 1e-10, "max |[H, P]| over three gauges: " + fmt(worst) + " (tol 1e-10)");
}

CheckResult finite_weak_coupling() {
  // Detuned bare levels n wc + m wx for N = 2, wx = 0.6.
  const std::vector<double> bare{0.0, 0.6, 1.0, 1.2, 1.6, 2.0};
  double worst_constant = 0.0;
  double worst_scaling = 0.0;
  for (auto gauge : {DickeGauge::standard_coulomb, DickeGauge::gi_coulomb, DickeGauge::dipole}) {
    std::vector<double> ratio;
    for (double eta : {0.02, 0.01, 0.005}) {
      const auto s = converged_spectrum(gauge, 6, finite_params(2, eta, 16, 0.6));
      double dev = 0.0;
      for (std::size_t i = 0; i < 6; ++i) dev = std::max(dev, std::abs(s.eigenvalues[i] - bare[i]));
      ratio.push_back(dev / (eta * eta));
    }
    worst_constant = std::max({worst_constant, ratio[0], ratio[1], ratio[2]});
    worst_scaling = std::max(worst_scaling, std::abs(ratio[2] / ratio[1] - 1.0));
  }
  return verdict(worst_constant < 50.0 && worst_scaling < 0.05,
                 "max |E - E_bare| / eta^2 = " + fmt(worst_constant) +
                     " (bound 50), drift of the ratio under halving " + fmt(worst_scaling) +
                     " (tol 0.05)");
}

// dicke-thermo --------------------------------------------------------------

CheckResult thermo_sum_product() {
  double worst = 0.0;
  for (double wx : kDetunings) {
    for (double lambda : lambda_range(0.0, 2.0, 0.01)) {
      for (auto gauge : {ThermoGauge::dipole, ThermoGauge::gi_coulomb}) {
        const auto b = polariton_branches({1.0, wx, lambda, 2.0, gauge});
        const double sum = b.lower * b.lower + b.upper * b.upper;
        const double product = b.lower * b.lower * b.upper * b.upper;
        worst = std::max({worst, std::abs(sum - (1.0 + wx * wx + 4.0 * lambda * lambda * wx)),
                          std::abs(product - wx * wx)});
      }
    }
  }
  return verdict(worst < 1e-9, "sum and product of squared branches: " + fmt(worst) + " (tol 1e-9)");
}

CheckResult thermo_standard_sum() {
  double worst = 0.0;
  for (double wx : kDetunings) {
    for (double lambda : lambda_range(0.0, 2.0, 0.01)) {
      const ThermoParams p{1.0, wx, lambda, 2.0, ThermoGauge::standard_coulomb};
      const auto b = polariton_branches(p);
      worst = std::max(worst, std::abs(b.lower * b.lower + b.upper * b.upper -
                                       (1.0 + wx * wx + 4.0 * p.D_prime() * p.omega_c)));
    }
  }
  return verdict(worst < 1e-9, "standard model sum of squared branches: " + fmt(worst) +
                                   " (tol 1e-9)");
}

CheckResult thermo_closed_form() {
  double worst = 0.0;
  for (double wx : kDetunings) {
    for (double lambda : lambda_range(0.0, 2.0, 0.01)) {
      worst = std::max(worst, closed_form_report({1.0, wx, lambda, 2.0, ThermoGauge::gi_coulomb})
                                  .max_abs_difference);
    }
  }
  return verdict(worst < 1e-10, "printed Coulomb form vs oracle: " + fmt(worst) + " (tol 1e-10)");
}

CheckResult thermo_stability() {
  std::size_t unstable = 0, total = 0;
  for (double alpha : {1.0, 1.5, 2.0, 4.0}) {
    for (double wx : kDetunings) {
      for (double lambda : lambda_range(0.0, 2.0, 0.01)) {
        for (auto gauge : {ThermoGauge::dipole, ThermoGauge::gi_coulomb, ThermoGauge::standard_coulomb}) {
          ++total;
          if (!polariton_branches({1.0, wx, lambda, alpha, gauge}).stable) ++unstable;
        }
      }
    }
  }
  return verdict(unstable == 0, std::to_string(unstable) + " unstable of " + std::to_string(total) +
                                    " (lambda <= 2, alpha in {1, 1.5, 2, 4})");
}

CheckResult thermo_unitary_convergence() {
  const ThermoParams tp{1.0, 1.0, 0.5, 2.0, ThermoGauge::gi_coulomb};
  const auto b = polariton_branches(tp);
  std::vector<double> ladder;
  for (int n = 0; n <= 4; ++n)
    for (int m = 0; m <= 4; ++m)
      if (n + m > 0) ladder.push_back(n * b.lower + m * b.upper);
  std::sort(ladder.begin(), ladder.end());
  std::vector<double> errors;
  for (int cutoff : {12, 24, 48}) {
    const auto gaps = excitation_gaps(build_via_limit_unitary(tp, cutoff), 3);
    double err = 0.0;
    for (std::size_t i = 0; i < 3; ++i) err = std::max(err, std::abs(gaps[i] - ladder[i]));
    errors.push_back(err);
  }
  constexpr double kFloor = 1e-12;
  bool decreasing = true;
  for (std::size_t i = 1; i < errors.size(); ++i) {
    decreasing = decreasing && (errors[i] < errors[i - 1] || errors[i] < kFloor);
  }
  return verdict(decreasing && errors.back() < 1e-9,
                 "gap error at cutoffs 12/24/48: " + fmt(errors[0]) + " / " + fmt(errors[1]) +
                     " / " + fmt(errors[2]) + " (decreasing to floor 1e-12, final < 1e-9)");
}

// hopfield ------------------------------------------------------------------

const std::vector<double> kBetas{0.01, 0.1, 0.5, 1.0};

CheckResult hopfield_gauge_invariance() {
  double worst = 0.0;
  for (double beta : kBetas) {
    const auto p = HopfieldParams::make(1.0, beta, log_dispersion(1.0, 0.1, 5.0, 20));
    for (std::size_t k = 0; k < p.dispersion.size(); ++k) {
      const auto cg = diagonalize_quadratic(build_block_cg(p, k));
      const auto dg = diagonalize_quadratic(build_block_dg(p, k));
      worst = std::max({worst, std::abs(cg.lower - dg.lower), std::abs(cg.upper - dg.upper)});
    }
  }
  return verdict(worst < 1e-10, "per-mode |w_cg - w_dg|: " + fmt(worst) + " (tol 1e-10)");
}

CheckResult hopfield_dielectric_identity() {
  double worst = 0.0;
  for (double beta : kBetas) {
    const auto p = HopfieldParams::make(1.0, beta, log_dispersion(1.0, 0.05, 5.0, 100));
    for (const auto& r : polariton_dispersion(p)) {
      worst = std::max({worst, dielectric_residual(r.omega_k, r.lower, 1.0, beta),
                        dielectric_residual(r.omega_k, r.upper, 1.0, beta)});
    }
  }
  return verdict(worst < 1e-8, "relative residual of the dispersion identity: " + fmt(worst) +
                                   " (tol 1e-8)");
}

CheckResult hopfield_anticrossing() {
  double smallest = std::numeric_limits<double>::infinity();
  for (double beta : kBetas) {
    const auto p = HopfieldParams::make(1.0, beta, log_dispersion(1.0, 0.05, 5.0, 100));
    for (const auto& r : polariton_dispersion(p)) smallest = std::min(smallest, r.upper - r.lower);
  }
  return verdict(smallest > 0.0, "min over k of (w_+ - w_-): " + fmt(smallest) + " (must be > 0)");
}

CheckResult hopfield_coupling_scaling() {
  double worst = 0.0;
  bool exact = true;
  for (double beta : kBetas) {
    const auto p = HopfieldParams::make(1.0, beta, log_dispersion(1.0, 0.05, 5.0, 100));
    const double c0 = p.lambda_k[0] * std::sqrt(p.dispersion[0]);
    for (std::size_t k = 0; k < p.dispersion.size(); ++k) {
      exact = exact && p.lambda_k[k] == HopfieldParams::coupling(1.0, beta, p.dispersion[k]);
      worst = std::max(worst, std::abs(p.lambda_k[k] * std::sqrt(p.dispersion[k]) / c0 - 1.0));
    }
  }
  return verdict(exact && worst < 1e-14, "Lambda_k sqrt(w_k) spread: " + fmt(worst) +
                                             " (tol 1e-14), stored equals derived: " +
                                             (exact ? "yes" : "no"));
}

// cli -----------------------------------------------------------------------

/// Significant digits of a plain decimal or exponent token.
int significant_digits(const std::string& token) {
  std::string mantissa = token.substr(0, token.find_first_of("eE"));
  std::string digits;
  for (char ch : mantissa)
    if (ch >= '0' && ch <= '9') digits += ch;
  const auto first = digits.find_first_not_of('0');
  if (first == std::string::npos) return 0;
  digits = digits.substr(first);
  if (mantissa.find('.') == std::string::npos) {
    const auto last = digits.find_last_not_of('0');
    digits = digits.substr(0, last + 1);
  }
  return static_cast<int>(digits.size());
}

CheckResult cli_determinism() {
  const auto thermo = resolve_config("dicke-thermo", Json::object(), {{"wx", "0.8"}});
  const auto hop = resolve_config("hopfield", Json::object(), {});
  const std::string a = render(thermo), b = render(thermo);
  const std::string c = render(hop), d = render(hop);
  int widest = 0;
  for (const std::string* text : {&a, &c}) {
    std::istringstream in(*text);
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
      std::istringstream fields(line);
      std::string token;
      while (std::getline(fields, token, ',')) widest = std::max(widest, significant_digits(token));
    }
  }
  const bool same = a == b && c == d;
  return verdict(same && widest <= 12, std::string("repeat runs byte-identical: ") +
                                           (same ? "yes" : "no") + ", widest number " +
                                           std::to_string(widest) + " significant digits (max 12)");
}

CheckResult cli_round_trip() {
  std::size_t checked = 0;
  bool same = true;
  const std::vector<std::pair<std::string, std::map<std::string, std::string>>> cases{
      {"dicke-thermo", {{"wx", "0.8"}, {"lambda", "0:1:0.05"}, {"format", "json"}}},
      {"hopfield", {{"beta", "0.3"}, {"wk-points", "12"}, {"format", "json"}}},
      {"dicke-finite", {{"N", "2"}, {"eta", "0.3"}, {"format", "json"}}},
      {"dipole-solve", {{"states", "4"}, {"format", "json"}}}};
  for (const auto& [command, flags] : cases) {
    const auto original = resolve_config(command, Json::object(), flags);
    const std::string first = render(original);
    const auto reloaded = resolve_config(command, parse_config_text(first, "round-trip"), {});
    same = same && reloaded.to_json() == original.to_json() && render(reloaded) == first;
    ++checked;
  }
  return verdict(same, std::to_string(checked) + " JSON outputs reloaded as configs; identical reruns: " +
                           (same ? "yes" : "no"));
}

CheckResult cli_registry_complete();

struct Entry {
  Invariant id;
  std::string_view suite;
  std::string_view name;
  CheckResult (*run)();
};

constexpr std::array<Entry, kInvariantCount> kRegistry{{
    {Invariant::su2_algebra, "operator-core", "su2_algebra", su2_algebra},
    {Invariant::spectral_calculus, "operator-core", "spectral_calculus", spectral_calculus},
    {Invariant::decoupled_bare_frequencies, "operator-core", "decoupled_bare_frequencies",
     decoupled_bare_frequencies},
    {Invariant::characteristic_roots, "operator-core", "characteristic_roots", characteristic_roots},
    {Invariant::gauge_pair_identity, "operator-core", "gauge_pair_identity", gauge_pair_identity},

    {Invariant::kernel_nonlocality_trend, "dipole1d", "kernel_nonlocality_trend",
     kernel_nonlocality_trend},
    {Invariant::trk_full_basis, "dipole1d", "trk_full_basis", trk_full_basis},
    {Invariant::grid_refinement, "dipole1d", "grid_refinement", grid_refinement},
    {Invariant::parity_selection, "dipole1d", "parity_selection", parity_selection},

    {Invariant::finite_gauge_equivalence, "dicke-finite", "gauge_equivalence", finite_gauge_equivalence},
    {Invariant::finite_gauge_violation, "dicke-finite", "gauge_violation", finite_gauge_violation},
    {Invariant::finite_parity, "dicke-finite", "parity_symmetry", finite_parity},
    {Invariant::finite_weak_coupling, "dicke-finite", "weak_coupling_continuity", finite_weak_coupling},

    {Invariant::thermo_sum_product, "dicke-thermo", "sum_product_identities", thermo_sum_product},
    {Invariant::thermo_standard_sum, "dicke-thermo", "standard_sum_identity", thermo_standard_sum},
    {Invariant::thermo_closed_form, "dicke-thermo", "closed_form_coulomb", thermo_closed_form},
    {Invariant::thermo_stability, "dicke-thermo", "stability", thermo_stability},
    {Invariant::thermo_unitary_convergence, "dicke-thermo", "unitary_convergence",
     thermo_unitary_convergence},

    {Invariant::hopfield_gauge_invariance, "hopfield", "gauge_invariance", hopfield_gauge_invariance},
    {Invariant::hopfield_dielectric_identity, "hopfield", "dielectric_identity",
     hopfield_dielectric_identity},
    {Invariant::hopfield_anticrossing, "hopfield", "anticrossing", hopfield_anticrossing},
    {Invariant::hopfield_coupling_scaling, "hopfield", "coupling_scaling", hopfield_coupling_scaling},

    {Invariant::cli_determinism, "cli", "determinism", cli_determinism},
    {Invariant::cli_round_trip, "cli", "json_round_trip", cli_round_trip},
    {Invariant::cli_registry_complete, "cli", "registry_complete", cli_registry_complete},
}};

struct SuiteSize {
  std::string_view suite;
  std::size_t invariants;
};

/// Invariant counts per module; a module gaining an invariant must add it here
/// and to the registry.
constexpr std::array<SuiteSize, 6> kSuiteSizes{{{"operator-core", 5},
                                                {"dipole1d", 4},
                                                {"dicke-finite", 4},
                                                {"dicke-thermo", 5},
                                                {"hopfield", 4},
                                                {"cli", 3}}};

constexpr bool registry_complete() {
  for (std::size_t i = 0; i < kRegistry.size(); ++i) {
    if (static_cast<std::size_t>(kRegistry[i].id) != i || kRegistry[i].run == nullptr) return false;
  }
  std::size_t total = 0;
  for (const auto& s : kSuiteSizes) {
    std::size_t n = 0;
    for (const auto& e : kRegistry) n += e.suite == s.suite ? 1 : 0;
    if (n != s.invariants) return false;
    total += n;
  }
  return total == kInvariantCount;
}

static_assert(registry_complete(), "verify registry must list every invariant exactly once");

CheckResult cli_registry_complete() {
  return verdict(registry_complete(), std::to_string(kRegistry.size()) + " invariants across " +
                                          std::to_string(kSuiteSizes.size()) + " suites");
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

std::vector<std::string_view> suite_names() {
  std::vector<std::string_view> names;
  for (const auto& s : kSuiteSizes) names.push_back(s.suite);
  return names;
}

std::vector<InvariantOutcome> run_invariants(
    std::string_view suite, const std::function<void(const InvariantOutcome&)>& on_result) {
  std::vector<InvariantOutcome> outcomes;
  for (const auto& e : kRegistry) {
    if (suite != "all" && e.suite != suite) continue;
    const auto start = std::chrono::steady_clock::now();
    CheckResult r;
    try {
      r = e.run();
    } catch (const std::exception& ex) {
      r = {false, std::string("error: ") + ex.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    outcomes.push_back({e.suite, e.name, std::move(r), seconds});
    if (on_result) on_result(outcomes.back());
  }
  return outcomes;
}

bool run_verify(const RunConfig& config, std::ostream& out) {
  const bool json_to_stdout = config.output == "-" && config.format == OutputFormat::json;
  const auto outcomes = run_invariants(config.text("suite"), [&](const InvariantOutcome& o) {
    if (json_to_stdout) return;
    out << (o.result.pass ? "PASS " : "FAIL ") << o.suite << "/" << o.name << ": "
        << o.result.detail << " [" << fmt(o.seconds) << " s]\n";
    out.flush();
  });

  std::size_t passed = 0;
  for (const auto& o : outcomes) passed += o.result.pass ? 1 : 0;

  if (!json_to_stdout) {
    out << "summary:\n";
    for (const auto& name : suite_names()) {
      std::size_t n = 0, ok = 0;
      for (const auto& o : outcomes) {
        if (o.suite != name) continue;
        ++n;
        ok += o.result.pass ? 1 : 0;
      }
      if (n == 0) continue;
      out << "  " << name << ": " << ok << "/" << n << " passed\n";
    }
    out << passed << " of " << outcomes.size() << " invariants passed\n";
    out.flush();
  }

  if (config.output != "-" || json_to_stdout) {
    std::string report;
    if (config.format == OutputFormat::json) {
      Json doc = Json::object();
      doc["config"] = config.to_json();
      Json rows = Json::array();
      for (const auto& o : outcomes) {
        rows.push_back({{"suite", o.suite}, {"invariant", o.name}, {"pass", o.result.pass},
                        {"detail", o.result.detail}});
      }
      doc["invariants"] = rows;
      doc["passed"] = passed;
      doc["total"] = outcomes.size();
      report = write_json(doc);
    } else {
      report = "suite,invariant,status,detail\n";
      for (const auto& o : outcomes) {
        report += std::string(o.suite) + "," + std::string(o.name) + "," +
                  (o.result.pass ? "pass" : "fail") + "," + csv_quote(o.result.detail) + "\n";
      }
    }
    write_output(config.output, report, out);
  }
  return passed == outcomes.size();
}

}  // namespace gaugekit::cli

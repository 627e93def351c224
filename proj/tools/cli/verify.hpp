#pragma once

#include <cstddef>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "config.hpp"

namespace gaugekit::cli {

/// Every module invariant, grouped by suite. `count` must stay last.
enum class Invariant : std::size_t {
  su2_algebra,
  spectral_calculus,
  decoupled_bare_frequencies,
  characteristic_roots,
  gauge_pair_identity,

  kernel_nonlocality_trend,
  trk_full_basis,
  grid_refinement,
  parity_selection,

  finite_gauge_equivalence,
  finite_gauge_violation,
  finite_parity,
  finite_weak_coupling,

  thermo_sum_product,
  thermo_standard_sum,
  thermo_closed_form,
  thermo_stability,
  thermo_unitary_convergence,

  hopfield_gauge_invariance,
  hopfield_dielectric_identity,
  hopfield_anticrossing,
  hopfield_coupling_scaling,

  cli_determinism,
  cli_round_trip,
  cli_registry_complete,

  count
};

inline constexpr std::size_t kInvariantCount = static_cast<std::size_t>(Invariant::count);

struct CheckResult {
  bool pass = false;
  std::string detail;
};

struct InvariantOutcome {
  std::string_view suite;
  std::string_view name;
  CheckResult result;
  double seconds = 0.0;
};

/// Runs the invariants of `suite` ("all" for every suite), in registry order,
/// calling `on_result` after each one.
std::vector<InvariantOutcome> run_invariants(
    std::string_view suite, const std::function<void(const InvariantOutcome&)>& on_result = {});

/// Runs the configured suite, prints one line per invariant plus a per-suite
/// summary to `out` (or writes a csv/json report to the configured path) and
/// returns true iff every invariant passed.
bool run_verify(const RunConfig& config, std::ostream& out);

/// Suite names in registry order.
std::vector<std::string_view> suite_names();

}  // namespace gaugekit::cli

#include "commands.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <system_error>
#include <unistd.h>

#include "gaugekit/dicke_finite.hpp"
#include "gaugekit/dicke_thermo.hpp"
#include "gaugekit/dipole1d.hpp"
#include "gaugekit/error.hpp"
#include "gaugekit/hopfield.hpp"
#include "json_writer.hpp"
#include "verify.hpp"

namespace gaugekit::cli {

namespace {

Json num_array(const std::vector<double>& values) {
  Json a = Json::array();
  for (double v : values) a.push_back(Json(v));
  return a;
}

std::string dump(const Json& doc) { return write_json(doc); }

Json document(const RunConfig& c) {
  Json doc = Json::object();
  doc["config"] = c.to_json();
  return doc;
}

PotentialSpec potential(const RunConfig& c) {
  return PotentialSpec::double_well(c.real("beta"), c.real("gamma"), c.real("extent"),
                                    static_cast<std::size_t>(c.integer("points")), c.real("ek"));
}

ParticleSpectrum solve(const RunConfig& c, const PotentialSpec& spec, std::size_t states) {
  return c.flag("fixed-extent") ? solve_bound_states(spec, states)
                                : solve_bound_states_auto_extent(spec, states);
}

Json grid_json(const Grid& g) {
  return {{"x_min", Json(g.x_min)}, {"x_max", Json(g.x_max)}, {"n_points", g.n_points}};
}

std::string dipole_solve(const RunConfig& c) {
  const PotentialSpec spec = potential(c);
  const auto s = solve(c, spec, static_cast<std::size_t>(c.integer("states")));
  if (c.format == OutputFormat::csv) {
    std::ostringstream out;
    write_spectrum_csv(out, s);
    return out.str();
  }
  Json doc = document(c);
  doc["grid"] = grid_json(s.grid);
  doc["grid_converged"] = s.grid_converged;
  doc["max_refinement_shift"] = Json(s.max_refinement_shift);
  doc["transition_refinement_shift"] = Json(s.transition_refinement_shift);
  Json states = Json::array();
  for (std::size_t k = 0; k < s.n_states(); ++k) {
    const auto i = static_cast<Eigen::Index>(k);
    states.push_back({{"k", k}, {"energy", Json(s.energies(i))}, {"d_k0", Json(s.dipole(i, 0))}});
  }
  doc["states"] = states;
  if (s.n_states() > 1) doc["trk_residual"] = Json(trk_residual(s, s.n_states() - 1));
  if (c.real("a0") > 0.0) {
    const auto d = derive_couplings(s, c.real("a0"), static_cast<std::size_t>(c.integer("n-dipoles")),
                                    s.n_states() - 1);
    doc["couplings"] = {{"A0", Json(d.A0)},          {"N", d.N},
                        {"eta_k", num_array(d.eta_k)}, {"eta", Json(d.eta)},
                        {"D", Json(d.D)},            {"alpha", Json(d.alpha())}};
  }
  return dump(doc);
}

std::string dipole_kernel(const RunConfig& c) {
  const PotentialSpec spec = potential(c);
  const auto levels = static_cast<std::size_t>(c.integer("levels"));
  const long states = c.integer("states");
  const auto s = solve(c, spec, states == 0 ? levels : static_cast<std::size_t>(states));
  const auto k = nonlocal_kernel(s, spec, levels);
  const auto stride = static_cast<std::size_t>(c.integer("stride"));
  if (c.format == OutputFormat::csv) {
    std::ostringstream out;
    write_kernel_csv(out, k, stride);
    return out.str();
  }
  Json doc = document(c);
  doc["grid"] = grid_json(k.grid);
  doc["levels"] = levels;
  doc["off_diagonal_fraction"] = Json(k.off_diagonal_fraction(static_cast<std::size_t>(c.integer("width"))));
  doc["asymmetry"] = Json(k.asymmetry());
  Json x = Json::array();
  Json w = Json::array();
  for (std::size_t i = 0; i < k.grid.n_points; i += stride) {
    x.push_back(Json(k.grid.at(i)));
    Json row = Json::array();
    for (std::size_t j = 0; j < k.grid.n_points; j += stride) {
      row.push_back(Json(k.kernel(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))));
    }
    w.push_back(row);
  }
  doc["x"] = x;
  doc["W"] = w;
  return dump(doc);
}

std::string dicke_finite(const RunConfig& c) {
  DickeFiniteParams p;
  p.N = static_cast<int>(c.integer("N"));
  p.omega_c = c.real("wc");
  p.omega_x = c.real("wx");
  p.eta = c.real("eta");
  p.D = c.params["D"].is_null() ? DickeFiniteParams::default_D(p.N, p.omega_x, p.eta, c.real("alpha"))
                                : c.real("D");
  p.n_max = static_cast<int>(c.integer("n-max"));
  p.dim_cap = static_cast<std::size_t>(c.integer("dim-cap"));
  ConvergencePolicy policy;
  policy.tolerance = c.real("tolerance");
  const auto m = static_cast<std::size_t>(c.integer("levels"));
  const auto scg = converged_spectrum(DickeGauge::standard_coulomb, m, p, policy);
  const auto gi = converged_spectrum(DickeGauge::gi_coulomb, m, p, policy);
  const auto dg = converged_spectrum(DickeGauge::dipole, m, p, policy);
  if (c.format == OutputFormat::csv) {
    std::ostringstream out;
    write_spectra_csv(out, scg, gi, dg);
    return out.str();
  }
  Json doc = document(c);
  Json params = {{"N", p.N},           {"omega_c", Json(p.omega_c)}, {"omega_x", Json(p.omega_x)},
                 {"eta", Json(p.eta)},  {"D", Json(p.D)},             {"dim_cap", p.dim_cap}};
  Json spectra = Json::array();
  for (const auto* s : {&scg, &gi, &dg}) {
    Json converged = Json::array();
    for (bool b : s->converged) converged.push_back(b);
    spectra.push_back({{"params", params},
                       {"gauge", to_string(s->gauge)},
                       {"n_max", s->n_max},
                       {"eigenvalues", num_array(s->eigenvalues)},
                       {"converged", converged}});
  }
  doc["spectra"] = spectra;
  return dump(doc);
}

std::string dicke_thermo(const RunConfig& c) {
  const RangeSpec r = parse_range(c.text("lambda"));
  const auto grid = lambda_range(r.start, r.stop, r.step);
  const SpectrumTable table =
      c.flag("printed") ? sweep_branches_printed(grid, c.real("wx"), c.real("alpha"), c.real("wc"))
                        : sweep_branches(grid, c.real("wx"), c.real("alpha"), c.real("wc"), thread_cap());
  if (c.format == OutputFormat::csv) {
    std::ostringstream out;
    write_spectrum_table_csv(out, table);
    return out.str();
  }
  Json doc = document(c);
  doc["params"] = {{"omega_c", Json(table.omega_c)},
                   {"omega_x", Json(table.omega_x)},
                   {"alpha", Json(table.alpha)},
                   {"printed", table.printed}};
  Json rows = Json::array();
  for (const auto& row : table.rows) {
    rows.push_back({{"lambda", Json(row.lambda)},
                    {"w_dg_lo", Json(row.dg_lo)},
                    {"w_dg_hi", Json(row.dg_hi)},
                    {"w_cg_lo", Json(row.cg_lo)},
                    {"w_cg_hi", Json(row.cg_hi)},
                    {"w_scg_lo", Json(row.scg_lo)},
                    {"w_scg_hi", Json(row.scg_hi)},
                    {"stable", row.stable}});
  }
  doc["rows"] = rows;
  return dump(doc);
}

std::vector<double> hopfield_grid(const RunConfig& c) {
  const double w0 = c.real("w0");
  const double lo = c.real("wk-min");
  const double hi = c.real("wk-max");
  const auto n = static_cast<std::size_t>(c.integer("wk-points"));
  if (c.text("wk-spacing") == "log") return log_dispersion(w0, lo, hi, n);
  std::vector<double> grid(n);
  for (std::size_t i = 0; i < n; ++i) {
    grid[i] = w0 * (lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1));
  }
  grid.back() = w0 * hi;
  return grid;
}

std::string hopfield(const RunConfig& c) {
  const auto p = HopfieldParams::make(c.real("w0"), c.real("beta"), hopfield_grid(c));
  const auto rows = polariton_dispersion(p, thread_cap());
  if (c.format == OutputFormat::csv) {
    std::ostringstream out;
    write_dispersion_csv(out, rows);
    return out.str();
  }
  Json doc = document(c);
  doc["params"] = {{"beta", Json(p.beta)}, {"omega0", Json(p.omega0)}};
  Json table = Json::array();
  for (const auto& r : rows) {
    table.push_back({{"omega_k", Json(r.omega_k)},
                     {"w_lower", Json(r.lower)},
                     {"w_upper", Json(r.upper)},
                     {"degeneracy", r.degeneracy}});
  }
  doc["rows"] = table;
  return dump(doc);
}

}  // namespace

std::string render(const RunConfig& c) {
  if (c.command == "dipole-solve") return dipole_solve(c);
  if (c.command == "dipole-kernel") return dipole_kernel(c);
  if (c.command == "dicke-finite") return dicke_finite(c);
  if (c.command == "dicke-thermo") return dicke_thermo(c);
  if (c.command == "hopfield") return hopfield(c);
  throw ConfigError({"command: '" + c.command + "' does not produce a table"});
}

void write_output(const std::string& path, const std::string& content, std::ostream& stdout_stream) {
  if (path == "-") {
    stdout_stream << content;
    stdout_stream.flush();
    return;
  }
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("output: cannot write '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw Error("output: write to '" + tmp.string() + "' failed");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) {
    std::error_code ignored;
    std::filesystem::remove(tmp, ignored);
    throw Error("output: cannot move result to '" + path + "': " + ec.message());
  }
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  if (c.command == "verify") return run_verify(c, out) ? 0 : 1;
  const std::string content = render(c);
  write_output(c.output, content, out);
  if (c.output != "-") err << "wrote " << c.output << "\n";
  return 0;
}

}  // namespace gaugekit::cli

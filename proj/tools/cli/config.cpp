#include "config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "gaugekit/dicke_finite.hpp"
#include "gaugekit/dicke_thermo.hpp"
#include "gaugekit/dipole1d.hpp"
#include "gaugekit/error.hpp"
#include "gaugekit/hopfield.hpp"

namespace gaugekit::cli {

namespace {

ValueCheck positive() {
  return [](const Json& v) { return v.get<double>() > 0.0 ? "" : "must be > 0"; };
}

ValueCheck nonnegative() {
  return [](const Json& v) { return v.get<double>() >= 0.0 ? "" : "must be >= 0"; };
}

ValueCheck at_least(long n) {
  return [n](const Json& v) {
    return v.get<long>() >= n ? std::string() : "must be >= " + std::to_string(n);
  };
}

ValueCheck one_of(std::vector<std::string> choices) {
  return [choices](const Json& v) {
    const auto s = v.get<std::string>();
    if (std::find(choices.begin(), choices.end(), s) != choices.end()) return std::string();
    std::string msg = "must be one of";
    for (const auto& c : choices) msg += " " + c;
    return msg;
  };
}

ValueCheck range_check() {
  return [](const Json& v) {
    try {
      const RangeSpec r = parse_range(v.get<std::string>());
      if (r.start < 0.0) return std::string("range must start at >= 0");
      return std::string();
    } catch (const std::invalid_argument& e) {
      return std::string(e.what());
    }
  };
}

ParamSpec real(std::string name, Json def, std::string help, ValueCheck check = {}) {
  return {std::move(name), ParamKind::real, std::move(def), std::move(help), std::move(check)};
}
ParamSpec integer(std::string name, long def, std::string help, ValueCheck check = {}) {
  return {std::move(name), ParamKind::integer, def, std::move(help), std::move(check)};
}
ParamSpec text(std::string name, std::string def, std::string help, ValueCheck check = {}) {
  return {std::move(name), ParamKind::text, std::move(def), std::move(help), std::move(check)};
}
ParamSpec flag(std::string name, std::string help) {
  return {std::move(name), ParamKind::flag, false, std::move(help), {}};
}

std::vector<ParamSpec> potential_params() {
  return {real("beta", 3.95, "double-well quadratic coefficient", positive()),
          real("gamma", 2.08, "double-well quartic coefficient", positive()),
          real("ek", 1.0, "kinetic energy scale E_k", positive()),
          real("extent", 4.0, "grid half-extent L", positive()),
          flag("fixed-extent", "do not widen the grid when states reach the boundary")};
}

std::vector<ParamSpec> with_output(std::vector<ParamSpec> params) {
  params.push_back(text("output", "-", "output path, - for stdout"));
  params.push_back(text("format", "csv", "csv or json", one_of({"csv", "json"})));
  return params;
}

std::vector<CommandSpec> make_specs() {
  std::vector<CommandSpec> specs;

  auto solve = potential_params();
  solve.push_back(integer("states", 10, "number of bound states", at_least(1)));
  solve.push_back(integer("points", 2001, "grid points", at_least(201)));
  solve.push_back(real("a0", 0.0, "vacuum field amplitude for derived couplings (0 = skip)",
                       nonnegative()));
  solve.push_back(integer("n-dipoles", 1, "dipole count for derived couplings", at_least(1)));
  specs.push_back({"dipole-solve", "bound states and dipole elements of the 1D well",
                   with_output(std::move(solve))});

  auto kernel = potential_params();
  kernel.push_back(integer("levels", 2, "truncation n of the kernel", at_least(1)));
  kernel.push_back(integer("states", 0, "states to solve for (0 = levels)", at_least(0)));
  kernel.push_back(integer("points", 401, "grid points", at_least(201)));
  kernel.push_back(integer("stride", 1, "export every stride-th grid point", at_least(1)));
  kernel.push_back(integer("width", 3, "off-diagonal band width in grid steps", at_least(0)));
  specs.push_back({"dipole-kernel", "truncated nonlocal potential kernel W_n(x, x')",
                   with_output(std::move(kernel))});

  specs.push_back(
      {"dicke-finite", "lowest levels of the finite-N Dicke model in three gauges",
       with_output({integer("N", 1, "number of dipoles", at_least(1)),
                    real("wc", 1.0, "cavity frequency", positive()),
                    real("wx", 1.0, "dipole transition frequency", positive()),
                    real("eta", 0.5, "single-dipole coupling", nonnegative()),
                    real("alpha", 2.0, "D'/D ratio used when D is not given", positive()),
                    real("D", nullptr, "diamagnetic coefficient of the standard model",
                         nonnegative()),
                    integer("levels", 6, "number of levels", at_least(1)),
                    integer("n-max", 16, "starting photon cutoff", at_least(1)),
                    integer("dim-cap", 4096, "Hilbert-space dimension cap", at_least(2)),
                    real("tolerance", 1e-8, "cutoff convergence tolerance (units of wc)",
                         positive())})});

  specs.push_back(
      {"dicke-thermo", "polariton branches of the thermodynamic-limit Dicke model",
       with_output({real("wc", 1.0, "cavity frequency", positive()),
                    real("wx", 1.0, "dipole transition frequency", positive()),
                    real("alpha", 2.0, "D'/D ratio of the standard model", positive()),
                    text("lambda", "0:2:0.01", "coupling grid start:stop:step", range_check()),
                    flag("printed", "emit the printed closed forms instead of the oracle")})});

  specs.push_back(
      {"hopfield", "polariton dispersion of the Hopfield model",
       with_output({real("w0", 1.0, "matter resonance", positive()),
                    real("beta", 0.5, "polarisability", nonnegative()),
                    real("wk-min", 0.05, "smallest w_k / w0", positive()),
                    real("wk-max", 5.0, "largest w_k / w0", positive()),
                    integer("wk-points", 100, "number of photon modes", at_least(2)),
                    text("wk-spacing", "log", "log or linear", one_of({"log", "linear"}))})});

  specs.push_back(
      {"verify", "run every module invariant and report pass/fail",
       with_output({text("suite", "all", "restrict to one suite",
                         one_of({"all", "operator-core", "dipole1d", "dicke-finite",
                                 "dicke-thermo", "hopfield", "cli"}))})});
  return specs;
}

std::string describe(const Json& v) { return v.dump(); }

/// Converts a flag's text to the key's type, or returns the reason it fails.
std::string convert_flag(const ParamSpec& spec, const std::string& raw, Json& out) {
  switch (spec.kind) {
    case ParamKind::real: {
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), v);
      if (ec != std::errc() || ptr != raw.data() + raw.size() || !std::isfinite(v)) {
        return "expected a number, got '" + raw + "'";
      }
      out = v;
      return {};
    }
    case ParamKind::integer: {
      long v = 0;
      const auto [ptr, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), v);
      if (ec != std::errc() || ptr != raw.data() + raw.size()) {
        return "expected an integer, got '" + raw + "'";
      }
      out = v;
      return {};
    }
    case ParamKind::flag:
      if (raw.empty() || raw == "true" || raw == "1") {
        out = true;
      } else if (raw == "false" || raw == "0") {
        out = false;
      } else {
        return "expected true or false, got '" + raw + "'";
      }
      return {};
    case ParamKind::text:
      out = raw;
      return {};
  }
  return "unsupported type";
}

/// Checks a file value's JSON type against the key's type.
std::string check_type(const ParamSpec& spec, const Json& v) {
  switch (spec.kind) {
    case ParamKind::real:
      return v.is_number() ? "" : "expected a number, got " + describe(v);
    case ParamKind::integer:
      return v.is_number_integer() ? "" : "expected an integer, got " + describe(v);
    case ParamKind::flag:
      return v.is_boolean() ? "" : "expected true or false, got " + describe(v);
    case ParamKind::text:
      return v.is_string() ? "" : "expected a string, got " + describe(v);
  }
  return "unsupported type";
}

std::string hyphenate(std::string key) {
  std::replace(key.begin(), key.end(), '_', '-');
  return key;
}

/// Runs the module's own precondition check on the resolved values.
void module_validation(const RunConfig& c, const CommandSpec& spec,
                       std::vector<std::string>& issues) {
  auto report = [&](const InvalidArgument& e) {
    std::string key = e.key();
    if (!spec.find(key) && spec.find(hyphenate(key))) key = hyphenate(key);
    const std::string prefix = e.key() + ": ";
    std::string msg = e.what();
    if (msg.rfind(prefix, 0) == 0) msg = msg.substr(prefix.size());
    issues.push_back(key + ": " + msg);
  };
  try {
    if (c.command == "dipole-solve" || c.command == "dipole-kernel") {
      PotentialSpec p = PotentialSpec::double_well(c.real("beta"), c.real("gamma"),
                                                   c.real("extent"),
                                                   static_cast<std::size_t>(c.integer("points")),
                                                   c.real("ek"));
      p.validate();
      if (c.command == "dipole-kernel") {
        const long states = c.integer("states");
        if (states != 0 && states < c.integer("levels")) {
          issues.push_back("states: must be 0 or >= levels (" +
                           std::to_string(c.integer("levels")) + ")");
        }
      }
    } else if (c.command == "dicke-finite") {
      DickeFiniteParams p;
      p.N = static_cast<int>(c.integer("N"));
      p.omega_c = c.real("wc");
      p.omega_x = c.real("wx");
      p.eta = c.real("eta");
      p.D = c.params["D"].is_null() ? DickeFiniteParams::default_D(p.N, p.omega_x, p.eta,
                                                                   c.real("alpha"))
                                    : c.real("D");
      p.n_max = static_cast<int>(c.integer("n-max"));
      p.dim_cap = static_cast<std::size_t>(c.integer("dim-cap"));
      try {
        p.validate();
      } catch (const DimensionCapExceeded& e) {
        issues.push_back(std::string("dim-cap: ") + e.what());
      }
    } else if (c.command == "dicke-thermo") {
      ThermoParams p{c.real("wc"), c.real("wx"), 0.0, c.real("alpha"), ThermoGauge::dipole};
      p.validate();
    } else if (c.command == "hopfield") {
      if (!(c.real("wk-max") > c.real("wk-min"))) {
        issues.push_back("wk-max: must exceed wk-min");
      }
    }
  } catch (const InvalidArgument& e) {
    report(e);
  }
}

std::pair<int, int> line_and_column(const std::string& text, std::size_t byte) {
  int line = 1, column = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

}  // namespace

const ParamSpec* CommandSpec::find(std::string_view key) const {
  for (const auto& p : params) {
    if (p.name == key) return &p;
  }
  return nullptr;
}

const std::vector<CommandSpec>& command_specs() {
  static const std::vector<CommandSpec> specs = make_specs();
  return specs;
}

bool is_command(std::string_view command) {
  const auto& specs = command_specs();
  return std::any_of(specs.begin(), specs.end(), [&](const auto& s) { return s.name == command; });
}

const CommandSpec& command_spec(std::string_view command) {
  for (const auto& s : command_specs()) {
    if (s.name == command) return s;
  }
  throw ConfigError({"command: unknown command '" + std::string(command) + "'"});
}

double RunConfig::real(const std::string& key) const { return params.at(key).get<double>(); }
long RunConfig::integer(const std::string& key) const { return params.at(key).get<long>(); }
std::string RunConfig::text(const std::string& key) const {
  return params.at(key).get<std::string>();
}
bool RunConfig::flag(const std::string& key) const { return params.at(key).get<bool>(); }

Json RunConfig::to_json() const {
  Json j = Json::object();
  j["command"] = command;
  for (const auto& [key, value] : params.items()) j[key] = value;
  j["output"] = output;
  j["format"] = to_string(format);
  return j;
}

std::string to_string(OutputFormat format) {
  return format == OutputFormat::json ? "json" : "csv";
}

namespace {

std::string join_issues(const std::vector<std::string>& issues) {
  std::string msg = "invalid configuration:";
  for (const auto& i : issues) msg += "\n  " + i;
  return msg;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> issues)
    : std::runtime_error(join_issues(issues)), issues_(std::move(issues)) {}

Json parse_config_text(const std::string& text, const std::string& origin) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    const auto [line, column] = line_and_column(text, e.byte == 0 ? 0 : e.byte - 1);
    throw ConfigError({origin + ":" + std::to_string(line) + ":" + std::to_string(column) +
                       ": malformed JSON (" + e.what() + ")"});
  }
  if (doc.is_object() && doc.contains("config") && doc["config"].is_object()) {
    doc = doc["config"];
  }
  if (!doc.is_object()) throw ConfigError({origin + ": top level must be a JSON object"});
  for (const auto& [key, value] : doc.items()) {
    if (value.is_object() || value.is_array()) {
      throw ConfigError({key + ": nested values are not allowed in a flat config"});
    }
  }
  return doc;
}

Json read_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError({"config: cannot open '" + path + "'"});
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path);
}

RunConfig resolve_config(const std::string& command, const Json& file,
                         const std::map<std::string, std::string>& flags) {
  std::vector<std::string> issues;
  const CommandSpec& spec = command_spec(command);

  if (file.contains("command")) {
    if (!file["command"].is_string() || file["command"].get<std::string>() != command) {
      issues.push_back("command: file is for " + describe(file["command"]) + ", not " + command);
    }
  }

  RunConfig c;
  c.command = command;
  for (const auto& p : spec.params) c.params[p.name] = p.default_value;

  std::set<std::string> from_file;
  for (const auto& [key, value] : file.items()) {
    if (key == "command") continue;
    const ParamSpec* p = spec.find(key);
    if (!p) {
      issues.push_back(key + ": unknown key for " + command);
      continue;
    }
    if (value.is_null() && p->default_value.is_null()) continue;
    if (auto why = check_type(*p, value); !why.empty()) {
      issues.push_back(key + ": " + why);
      continue;
    }
    c.params[key] = value;
  }

  for (const auto& [key, raw] : flags) {
    const ParamSpec* p = spec.find(key);
    if (!p) {
      issues.push_back(key + ": unknown key for " + command);
      continue;
    }
    Json value;
    if (auto why = convert_flag(*p, raw, value); !why.empty()) {
      issues.push_back(key + ": " + why);
      continue;
    }
    c.params[key] = value;
  }

  bool values_ok = issues.empty();
  for (const auto& p : spec.params) {
    const Json& v = c.params[p.name];
    if (v.is_null() || !p.check) continue;
    if (auto why = p.check(v); !why.empty()) {
      issues.push_back(p.name + ": " + why + " (got " + describe(v) + ")");
      values_ok = false;
    }
  }

  if (values_ok) {
    c.output = c.text("output");
    c.format = c.text("format") == "json" ? OutputFormat::json : OutputFormat::csv;
    if (c.output.empty()) issues.push_back("output: must not be empty");
    module_validation(c, spec, issues);
  }

  if (!issues.empty()) throw ConfigError(std::move(issues));
  return c;
}

RunConfig load_config(const std::string& path, const std::string& command,
                      const std::map<std::string, std::string>& flags) {
  const Json file = read_config_file(path);
  std::string name = command;
  if (name.empty()) {
    if (!file.contains("command") || !file["command"].is_string()) {
      throw ConfigError({"command: not given on the command line or in '" + path + "'"});
    }
    name = file["command"].get<std::string>();
  }
  return resolve_config(name, file, flags);
}

RangeSpec parse_range(const std::string& text) {
  std::vector<double> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t colon = text.find(':', start);
    const std::string piece = text.substr(start, colon == std::string::npos ? colon : colon - start);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), v);
    if (piece.empty() || ec != std::errc() || ptr != piece.data() + piece.size() ||
        !std::isfinite(v)) {
      throw std::invalid_argument("expected start:stop:step or a number, got '" + text + "'");
    }
    parts.push_back(v);
    if (colon == std::string::npos) break;
    start = colon + 1;
  }
  if (parts.size() == 1) return {parts[0], parts[0], 1.0};
  if (parts.size() != 3) {
    throw std::invalid_argument("expected start:stop:step or a number, got '" + text + "'");
  }
  if (!(parts[2] > 0.0)) throw std::invalid_argument("range step must be > 0");
  if (parts[1] < parts[0]) throw std::invalid_argument("range stop must be >= start");
  if ((parts[1] - parts[0]) / parts[2] > 1e7) throw std::invalid_argument("range has too many points");
  return {parts[0], parts[1], parts[2]};
}

std::size_t thread_cap() {
  const char* env = std::getenv("GAUGEKIT_THREADS");
  if (!env || !*env) return 0;
  const std::string s(env);
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || v == 0) {
    throw ConfigError({"GAUGEKIT_THREADS: expected a positive integer, got '" + s + "'"});
  }
  return v;
}

}  // namespace gaugekit::cli

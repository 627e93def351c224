#include "app.hpp"

#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "commands.hpp"
#include "config.hpp"
#include "gaugekit/error.hpp"

namespace gaugekit::cli {

namespace {

struct Binding {
  std::string key;
  CLI::Option* option = nullptr;
  std::string text;
  bool flag_value = false;
  bool is_flag = false;
};

std::string kind_name(ParamKind kind) {
  switch (kind) {
    case ParamKind::real: return "FLOAT";
    case ParamKind::integer: return "INT";
    case ParamKind::text: return "TEXT";
    case ParamKind::flag: return "";
  }
  return "";
}

std::string default_text(const ParamSpec& p) {
  if (p.default_value.is_null()) return "unset";
  if (p.default_value.is_string()) return p.default_value.get<std::string>();
  return p.default_value.dump();
}

void report(std::ostream& err, const ConfigError& e) {
  err << "gaugekit: invalid configuration\n";
  for (const auto& issue : e.issues()) err << "  " << issue << "\n";
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gauge-invariant light-matter Hamiltonians: tables and verification", "gaugekit"};
  app.fallthrough();
  app.require_subcommand(0, 1);
  std::string config_path;
  app.add_option("--config", config_path,
                 "flat JSON config (or a previous JSON output); flags override its values");

  std::map<std::string, std::vector<std::unique_ptr<Binding>>> bindings;
  std::map<std::string, CLI::App*> subcommands;
  for (const auto& spec : command_specs()) {
    CLI::App* sub = app.add_subcommand(spec.name, spec.help);
    subcommands[spec.name] = sub;
    for (const auto& p : spec.params) {
      auto b = std::make_unique<Binding>();
      b->key = p.name;
      const std::string help = p.help + " (default " + default_text(p) + ")";
      if (p.kind == ParamKind::flag) {
        b->is_flag = true;
        b->option = sub->add_flag("--" + p.name, b->flag_value, help);
      } else {
        b->option = sub->add_option("--" + p.name, b->text, help)->type_name(kind_name(p.kind));
      }
      bindings[spec.name].push_back(std::move(b));
    }
  }

  try {
    std::vector<std::string> args;
    for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    std::ostringstream cli_out, cli_err;
    const int code = app.exit(e, cli_out, cli_err);
    out << cli_out.str();
    err << cli_err.str();
    return code == 0 ? kSuccess : kConfigError;
  }

  std::string command;
  for (const auto& [name, sub] : subcommands) {
    if (sub->parsed()) command = name;
  }

  try {
    std::map<std::string, std::string> flags;
    if (!command.empty()) {
      for (const auto& b : bindings[command]) {
        if (b->option->count() == 0) continue;
        flags[b->key] = b->is_flag ? (b->flag_value ? "true" : "false") : b->text;
      }
    }
    RunConfig config;
    if (!config_path.empty()) {
      config = load_config(config_path, command, flags);
    } else if (!command.empty()) {
      config = resolve_config(command, Json::object(), flags);
    } else {
      err << app.help();
      return kConfigError;
    }
    return run(config, out, err);
  } catch (const ConfigError& e) {
    report(err, e);
    return kConfigError;
  } catch (const InvalidArgument& e) {
    err << "gaugekit: invalid parameter " << e.key() << ": " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    err << "gaugekit: " << e.what() << "\n";
    return kModuleError;
  }
}

}  // namespace gaugekit::cli

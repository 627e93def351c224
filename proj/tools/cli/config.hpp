#pragma once

#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace gaugekit::cli {

using Json = nlohmann::ordered_json;

enum class ParamKind { real, integer, text, flag };

/// Returns an empty string when the value is acceptable, otherwise the reason.
using ValueCheck = std::function<std::string(const Json&)>;

/// One key of a command's flat schema. The same name is used as the JSON key
/// and as the long flag (`--name`). A null default marks an optional key.
struct ParamSpec {
  std::string name;
  ParamKind kind;
  Json default_value;
  std::string help;
  ValueCheck check;
};

struct CommandSpec {
  std::string name;
  std::string help;
  std::vector<ParamSpec> params;

  const ParamSpec* find(std::string_view key) const;
};

/// Every command with its schema, in a fixed order.
const std::vector<CommandSpec>& command_specs();
const CommandSpec& command_spec(std::string_view command);
bool is_command(std::string_view command);

enum class OutputFormat { csv, json };

struct RunConfig {
  std::string command;
  Json params = Json::object();  // every schema key, fully resolved
  std::string output = "-";      // "-" is stdout
  OutputFormat format = OutputFormat::csv;
  bool deterministic = true;     // no randomness anywhere; always true

  double real(const std::string& key) const;
  long integer(const std::string& key) const;
  std::string text(const std::string& key) const;
  bool flag(const std::string& key) const;

  /// Flat, re-ingestable representation (command, every key, output, format).
  Json to_json() const;
};

/// All problems found while resolving a configuration.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> issues);
  const std::vector<std::string>& issues() const noexcept { return issues_; }

 private:
  std::vector<std::string> issues_;
};

/// Parsed config file: a flat object, or a previous JSON output whose
/// "config" member is such an object. Throws ConfigError with line and
/// column on malformed input and naming any non-object value.
Json read_config_file(const std::string& path);
Json parse_config_text(const std::string& text, const std::string& origin);

/// Resolves defaults < file < flags, converts flag strings to typed values
/// and checks every key against the command's preconditions. All problems
/// are reported together in one ConfigError.
RunConfig resolve_config(const std::string& command, const Json& file,
                         const std::map<std::string, std::string>& flags);

/// load_config: read_config_file + resolve_config. The file's "command"
/// member is used when `command` is empty.
RunConfig load_config(const std::string& path, const std::string& command = {},
                      const std::map<std::string, std::string>& flags = {});

std::string to_string(OutputFormat format);

/// `start:stop:step`, or a single number (one point).
struct RangeSpec {
  double start = 0.0;
  double stop = 0.0;
  double step = 1.0;
};

/// Throws std::invalid_argument describing the problem.
RangeSpec parse_range(const std::string& text);

/// Reads GAUGEKIT_THREADS; 0 (hardware concurrency) when unset.
std::size_t thread_cap();

}  // namespace gaugekit::cli

#pragma once

#include <ostream>
#include <string>

#include "config.hpp"

namespace gaugekit::cli {

/// The table or document a (non-verify) command produces, in the configured
/// format. Identical configs give byte-identical text.
std::string render(const RunConfig& config);

/// Writes `content` to a temporary file beside `path` and renames it into
/// place; "-" writes to `stdout_stream` instead.
void write_output(const std::string& path, const std::string& content, std::ostream& stdout_stream);

/// Executes a resolved config. Returns the process exit status.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace gaugekit::cli

#pragma once

#include <string>

#include "config.hpp"

namespace gaugekit::cli {

/// Pretty-printed JSON (two-space indent, trailing newline) whose floating
/// point numbers use format_number, so every value carries at most 12
/// significant digits. Non-finite numbers are written as null.
std::string write_json(const Json& doc);

}  // namespace gaugekit::cli

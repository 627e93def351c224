#pragma once

#include <string>

namespace gaugekit {

/// Locale-independent shortest representation of `value` capped at 12
/// significant digits. Identical inputs always produce identical text.
std::string format_number(double value);

/// `value` rounded to 12 significant digits (round-trips through
/// format_number).
double round_significant(double value);

}  // namespace gaugekit

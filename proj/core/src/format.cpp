#include "gaugekit/format.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace gaugekit {

std::string format_number(double value) {
  if (value == 0.0) return "0";  // folds -0 as well
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";

  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                 std::chars_format::general, 12);
  (void)ec;
  return std::string(buf.data(), end);
}

double round_significant(double value) {
  if (!std::isfinite(value) || value == 0.0) return value == 0.0 ? 0.0 : value;
  const std::string text = format_number(value);
  double out = 0.0;
  std::from_chars(text.data(), text.data() + text.size(), out);
  return out;
}

}  // namespace gaugekit

#pragma once

#include <string>
#include <string_view>

namespace perceprice::report {

/// Fixed-point text with `precision` decimals, rounding the exact binary
/// value half-to-even. A result that rounds to zero never carries a sign.
std::string format_fixed(double value, int precision);

/// Shortest decimal text that parses back to the same double.
std::string format_shortest(double value);

/// Up to `max_decimals` decimals with trailing zeros (and a bare point)
/// removed: 20.000 -> "20", -1.2000000000000002 -> "-1.2".
std::string format_trimmed(double value, int max_decimals = 10);

/// Number of digits after the decimal point in a printed number.
int decimals_of(std::string_view printed);

/// p-values print at 3 decimals, or 4 below 0.001.
int p_value_precision(double p);

}  // namespace perceprice::report

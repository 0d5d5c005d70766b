#pragma once

#include <string>
#include <string_view>

namespace krein {

// 17 significant digits; parse_double(format_double(x)) == x for every finite x.
std::string format_double(double value);

// Throws FileFormatError when the whole token is not a number.
double parse_double(std::string_view token);

} // namespace krein

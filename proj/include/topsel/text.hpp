#pragma once

#include <string>
#include <string_view>

namespace topsel {

/// Shortest decimal form that parses back to the same double.
std::string format_double(double value);

/// Strict full-field double parse; throws ParseError mentioning `what`.
double parse_double(std::string_view field, const std::string& what);

} // namespace topsel

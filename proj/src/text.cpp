#include "topsel/text.hpp"

#include "topsel/errors.hpp"

#include <charconv>

namespace topsel {

std::string format_double(double value) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

double parse_double(std::string_view field, const std::string& what) {
    double value = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size()) {
        throw ParseError("bad " + what + " '" + std::string(field) + "'");
    }
    return value;
}

} // namespace topsel

#include "topsel/date.hpp"

#include "topsel/errors.hpp"

#include <cctype>
#include <charconv>
#include <chrono>
#include <cstdio>

namespace topsel {

namespace {

int parse_field(std::string_view text, size_t pos, size_t len) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + pos + len, value);
    if (ec != std::errc{} || ptr != text.data() + pos + len) {
        throw ParseError("invalid date '" + std::string(text) + "': expected YYYY-MM-DD");
    }
    return value;
}

} // namespace

Date::Date(int year, int month, int day) : year_(year), month_(month), day_(day) {
    namespace chr = std::chrono;
    const chr::year_month_day ymd{chr::year{year}, chr::month{unsigned(month)},
                                  chr::day{unsigned(day)}};
    if (!ymd.ok()) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", year, month, day);
        throw ParseError(std::string("invalid date '") + buf + "': no such calendar day");
    }
}

Date Date::parse(std::string_view iso) {
    if (iso.size() != 10 || iso[4] != '-' || iso[7] != '-') {
        throw ParseError("invalid date '" + std::string(iso) + "': expected YYYY-MM-DD");
    }
    for (size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u}) {
        if (!std::isdigit(static_cast<unsigned char>(iso[i]))) {
            throw ParseError("invalid date '" + std::string(iso) + "': expected YYYY-MM-DD");
        }
    }
    return Date(parse_field(iso, 0, 4), parse_field(iso, 5, 2), parse_field(iso, 8, 2));
}

std::string Date::to_string() const {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", year_, month_, day_);
    return buf;
}

} // namespace topsel

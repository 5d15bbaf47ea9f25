#pragma once

#include <compare>
#include <string>
#include <string_view>

namespace topsel {

/// Calendar day, ISO-8601 `YYYY-MM-DD` on the wire.
class Date {
public:
    Date() = default;
    Date(int year, int month, int day);

    /// Parses `YYYY-MM-DD`; throws ParseError on malformed or impossible dates.
    static Date parse(std::string_view iso);

    int year() const { return year_; }
    int month() const { return month_; }
    int day() const { return day_; }

    std::string to_string() const;

    auto operator<=>(const Date&) const = default;

private:
    int year_ = 0;
    int month_ = 0;
    int day_ = 0;
};

} // namespace topsel

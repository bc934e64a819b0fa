#pragma once
// Minimal proleptic-Gregorian calendar date. All series in the engine
// align on calendar dates (ISO-8601 "YYYY-MM-DD"), never on row indices.

#include <compare>
#include <cstdint>
#include <string>

#include "coglab/error.hpp"

namespace coglab {

class Date {
public:
    Date() = default;
    Date(int year, int month, int day);

    static Date parse(const std::string& iso);     // throws InputError
    static Date from_days(std::int64_t days);      // inverse of days_since_epoch

    int year() const { return year_; }
    int month() const { return month_; }
    int day() const { return day_; }

    // Days since 1970-01-01; negative before the epoch.
    std::int64_t days_since_epoch() const;

    Date plus_days(std::int64_t n) const { return from_days(days_since_epoch() + n); }

    std::string to_string() const;  // ISO-8601

    auto operator<=>(const Date&) const = default;

private:
    int year_ = 1970;
    int month_ = 1;
    int day_ = 1;
};

inline std::int64_t operator-(const Date& a, const Date& b) {
    return a.days_since_epoch() - b.days_since_epoch();
}

}  // namespace coglab

#include "coglab/date.hpp"

#include <cstdio>

namespace coglab {

namespace {

bool is_leap(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

int days_in_month(int y, int m) {
    static constexpr int kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (m == 2 && is_leap(y)) return 29;
    return kDays[m - 1];
}

}  // namespace

Date::Date(int year, int month, int day) : year_(year), month_(month), day_(day) {
    if (month < 1 || month > 12 || day < 1 || day > days_in_month(year, month)) {
        throw InputError("invalid calendar date: " + std::to_string(year) + "-" +
                         std::to_string(month) + "-" + std::to_string(day));
    }
}

Date Date::parse(const std::string& iso) {
    int y = 0, m = 0, d = 0;
    char tail = 0;
    if (std::sscanf(iso.c_str(), "%d-%d-%d%c", &y, &m, &d, &tail) != 3) {
        throw InputError("unparseable date: '" + iso + "' (expected YYYY-MM-DD)");
    }
    return Date(y, m, d);
}

// Howard Hinnant's civil-days algorithm.
std::int64_t Date::days_since_epoch() const {
    std::int64_t y = year_;
    const int m = month_;
    const int d = day_;
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

Date Date::from_days(std::int64_t days) {
    days += 719468;
    const std::int64_t era = (days >= 0 ? days : days - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(days - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    const unsigned d = doy - (153 * mp + 2) / 5 + 1;
    const unsigned m = mp + (mp < 10 ? 3 : -9);
    Date out;
    out.year_ = static_cast<int>(y + (m <= 2));
    out.month_ = static_cast<int>(m);
    out.day_ = static_cast<int>(d);
    return out;
}

std::string Date::to_string() const {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", year_, month_, day_);
    return buf;
}

}  // namespace coglab

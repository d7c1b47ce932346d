#include "ragmark/timeutil.hpp"

#include <array>
#include <cctype>
#include <cstdio>

#include "ragmark/errors.hpp"

namespace ragmark {
namespace {

constexpr std::array<int, 12> kDaysPerMonth = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};

bool is_leap(int year) {
    return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
}

std::int64_t days_from_civil(int y, int m, int d) {
    // Howard Hinnant's algorithm; valid for all reasonable timestamps.
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const int yoe = static_cast<int>(y - era * 400);
    const int doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const int doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + doe - 719468;
}

int parse_digits(std::string_view text, std::size_t pos, int count) {
    int value = 0;
    for (int i = 0; i < count; ++i) {
        if (pos + i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos + i]))) {
            throw ParseError("invalid RFC3339 timestamp \"" + std::string(text) + "\"");
        }
        value = value * 10 + (text[pos + i] - '0');
    }
    return value;
}

}  // namespace

std::int64_t parse_rfc3339(std::string_view text) {
    // YYYY-MM-DDTHH:MM:SS[.frac](Z|+HH:MM|-HH:MM)
    auto fail = [&]() -> ParseError {
        return ParseError("invalid RFC3339 timestamp \"" + std::string(text) + "\"");
    };
    if (text.size() < 20) throw fail();
    int year = parse_digits(text, 0, 4);
    int month = parse_digits(text, 5, 2);
    int day = parse_digits(text, 8, 2);
    int hour = parse_digits(text, 11, 2);
    int minute = parse_digits(text, 14, 2);
    int second = parse_digits(text, 17, 2);
    if (text[4] != '-' || text[7] != '-' || (text[10] != 'T' && text[10] != 't') ||
        text[13] != ':' || text[16] != ':') {
        throw fail();
    }
    if (month < 1 || month > 12) throw fail();
    int max_day = kDaysPerMonth[static_cast<std::size_t>(month - 1)] +
                  (month == 2 && is_leap(year) ? 1 : 0);
    if (day < 1 || day > max_day) throw fail();
    if (hour > 23 || minute > 59 || second > 60) throw fail();
    if (second == 60) second = 59;  // fold leap seconds

    std::size_t pos = 19;
    if (pos < text.size() && text[pos] == '.') {
        ++pos;
        std::size_t digits = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            ++pos;
            ++digits;
        }
        if (digits == 0) throw fail();
    }
    if (pos >= text.size()) throw fail();

    std::int64_t offset = 0;
    char tz = text[pos];
    if (tz == 'Z' || tz == 'z') {
        ++pos;
    } else if (tz == '+' || tz == '-') {
        if (pos + 6 > text.size() || text[pos + 3] != ':') throw fail();
        int oh = parse_digits(text, pos + 1, 2);
        int om = parse_digits(text, pos + 4, 2);
        if (oh > 23 || om > 59) throw fail();
        offset = static_cast<std::int64_t>(oh) * 3600 + om * 60;
        if (tz == '-') offset = -offset;
        pos += 6;
    } else {
        throw fail();
    }
    if (pos != text.size()) throw fail();

    std::int64_t days = days_from_civil(year, month, day);
    return days * 86400 + hour * 3600 + minute * 60 + second - offset;
}

std::string format_rfc3339(std::int64_t epoch_seconds) {
    std::int64_t days = epoch_seconds / 86400;
    std::int64_t rem = epoch_seconds % 86400;
    if (rem < 0) {
        rem += 86400;
        days -= 1;
    }
    // civil_from_days, inverse of the above
    std::int64_t z = days + 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const int doe = static_cast<int>(z - era * 146097);
    const int yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t y = yoe + era * 400;
    const int doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const int mp = (5 * doy + 2) / 153;
    const int d = doy - (153 * mp + 2) / 5 + 1;
    const int m = mp + (mp < 10 ? 3 : -9);
    const std::int64_t year = y + (m <= 2);

    char buf[48];
    std::snprintf(buf, sizeof(buf), "%04lld-%02d-%02dT%02lld:%02lld:%02lldZ",
                  static_cast<long long>(year), m, d, static_cast<long long>(rem / 3600),
                  static_cast<long long>((rem / 60) % 60), static_cast<long long>(rem % 60));
    return buf;
}

}  // namespace ragmark

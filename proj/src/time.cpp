#include "lifespan/time.hpp"

#include <charconv>
#include <cstdio>

namespace lifespan {

namespace {

bool read_uint(std::string_view text, std::size_t pos, std::size_t len, unsigned& out) {
    if (pos + len > text.size()) return false;
    for (std::size_t i = pos; i < pos + len; ++i) {
        if (text[i] < '0' || text[i] > '9') return false;
    }
    auto res = std::from_chars(text.data() + pos, text.data() + pos + len, out);
    return res.ec == std::errc();
}

std::optional<Date> make_date(unsigned y, unsigned mo, unsigned d) {
    std::chrono::year_month_day ymd{std::chrono::year{static_cast<int>(y)},
                                    std::chrono::month{mo}, std::chrono::day{d}};
    if (!ymd.ok()) return std::nullopt;
    return Date{ymd};
}

}  // namespace

std::optional<Date> parse_date(std::string_view text) {
    unsigned y, mo, d;
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
    if (!read_uint(text, 0, 4, y) || !read_uint(text, 5, 2, mo) || !read_uint(text, 8, 2, d))
        return std::nullopt;
    return make_date(y, mo, d);
}

std::optional<Timestamp> parse_rfc3339_utc(std::string_view text) {
    if (text.size() < 20) return std::nullopt;
    unsigned y, mo, d, h, mi, s;
    if (text[4] != '-' || text[7] != '-' || (text[10] != 'T' && text[10] != 't') ||
        text[13] != ':' || text[16] != ':')
        return std::nullopt;
    if (!read_uint(text, 0, 4, y) || !read_uint(text, 5, 2, mo) || !read_uint(text, 8, 2, d) ||
        !read_uint(text, 11, 2, h) || !read_uint(text, 14, 2, mi) || !read_uint(text, 17, 2, s))
        return std::nullopt;
    if (h > 23 || mi > 59 || s > 60) return std::nullopt;
    if (s == 60) s = 59;  // leap seconds collapse; day arithmetic is unaffected

    std::size_t pos = 19;
    if (pos < text.size() && text[pos] == '.') {
        ++pos;
        std::size_t digits = 0;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
            ++pos;
            ++digits;
        }
        if (digits == 0) return std::nullopt;
    }
    std::string_view offset = text.substr(pos);
    if (offset != "Z" && offset != "z" && offset != "+00:00" && offset != "-00:00")
        return std::nullopt;

    auto date = make_date(y, mo, d);
    if (!date) return std::nullopt;
    return Timestamp{*date + std::chrono::hours{h} + std::chrono::minutes{mi} +
                     std::chrono::seconds{s}};
}

std::string format_date(Date d) {
    std::chrono::year_month_day ymd{d};
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
    return buf;
}

std::string format_timestamp(Timestamp ts) {
    Date day = to_date(ts);
    auto tod = std::chrono::hh_mm_ss{ts - day};
    char buf[32];
    std::snprintf(buf, sizeof buf, "%sT%02ld:%02ld:%02ldZ", format_date(day).c_str(),
                  static_cast<long>(tod.hours().count()),
                  static_cast<long>(tod.minutes().count()),
                  static_cast<long>(tod.seconds().count()));
    return buf;
}

}  // namespace lifespan

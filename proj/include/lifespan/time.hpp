#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace lifespan {

// Calendar day (UTC). All gap arithmetic works at this granularity.
using Date = std::chrono::sys_days;
// Second-precision UTC instant, as stored in the canonical files.
using Timestamp = std::chrono::sys_seconds;

inline Date to_date(Timestamp ts) { return std::chrono::floor<std::chrono::days>(ts); }

inline std::int64_t days_between(Date from, Date to) { return (to - from).count(); }

// "YYYY-MM-DD". Rejects impossible calendar dates.
std::optional<Date> parse_date(std::string_view text);

// RFC 3339 UTC instant: "YYYY-MM-DDTHH:MM:SSZ". A fractional-second part is
// accepted and truncated; the offset must be "Z" or "+00:00".
std::optional<Timestamp> parse_rfc3339_utc(std::string_view text);

std::string format_date(Date d);
std::string format_timestamp(Timestamp ts);

}  // namespace lifespan

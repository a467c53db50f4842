#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace lifespan {

// Quotes a field when it contains a comma, quote, or newline.
std::string csv_escape(std::string_view field);

// Splits one CSV line, honoring double-quoted fields with "" escapes.
std::vector<std::string> csv_split(std::string_view line);

// Fixed-point decimal rendering, the format used throughout the emitted
// tables (tables use 4 decimals, model outputs 12).
std::string format_real(double value, int decimals = 4);

}  // namespace lifespan

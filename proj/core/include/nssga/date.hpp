#pragma once

#include <chrono>
#include <string>
#include <string_view>

namespace nssga {

using Date = std::chrono::year_month_day;

/// Parses a strict ISO-8601 calendar date ("YYYY-MM-DD"). Throws InputError.
Date parse_iso_date(std::string_view text);

std::string to_iso_string(Date date);

/// Actual calendar days from `from` to `to` (negative when `to` precedes `from`).
long days_between(Date from, Date to);

}  // namespace nssga

#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "simproj/diagnostics.hpp"

namespace simproj {

// Working-time units, totally ordered day < week < month < year.
enum class TimeUnit { day, week, month, year };

std::string_view unit_name(TimeUnit u);    // "day", "week", ...
char unit_suffix(TimeUnit u);              // 'd', 'w', 'm', 'y'
std::optional<TimeUnit> unit_from_suffix(char c);

// Next unit up; throws ConversionError(invalid_params) above year.
TimeUnit unit_above(TimeUnit u);

// Working-time calendar with exact integer ratios between adjacent units.
struct Calendar {
    long long days_per_week = 5;
    long long weeks_per_month = 4;
    long long months_per_year = 12;

    long long days_per(TimeUnit u) const;
    // Factor between two adjacent units, e.g. ratio(day, week) == days_per_week.
    long long ratio(TimeUnit from, TimeUnit to) const;

    bool operator==(const Calendar&) const = default;
};

// Nonnegative whole count of a unit. `promoted` marks values produced by the
// sub-unit promotion rule: a computed duration that rounded to zero and was
// reported as one cycle period instead.
struct Duration {
    long long magnitude = 0;
    TimeUnit unit = TimeUnit::day;
    bool promoted = false;

    bool is_zero() const { return magnitude == 0; }
    bool operator==(const Duration&) const = default;
};

inline Duration days(long long n) { return {n, TimeUnit::day, false}; }
inline Duration weeks(long long n) { return {n, TimeUnit::week, false}; }
inline Duration months(long long n) { return {n, TimeUnit::month, false}; }
inline Duration years(long long n) { return {n, TimeUnit::year, false}; }

// Exact unit conversion. Converting downward always succeeds; converting
// upward requires the magnitude to be an exact multiple of the factor and
// throws ConversionError(inexact_conversion) otherwise. The promoted flag is
// preserved.
Duration convert(const Duration& d, TimeUnit target, const Calendar& cal);

// Magnitude expressed as a day count via the calendar's exact factors.
long long normalize_to_days(const Duration& d, const Calendar& cal);

// Compact text forms used by the plan format and CLI flags: "1d", "4w", "6m".
std::string format_compact(const Duration& d);
std::optional<Duration> parse_compact_duration(std::string_view text);

// Human form: "1 week", "4 weeks".
std::string format_long(const Duration& d);

}  // namespace simproj

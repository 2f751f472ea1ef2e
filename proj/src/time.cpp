#include "simproj/time.hpp"

#include <array>
#include <cctype>

namespace simproj {

namespace {

constexpr std::array<std::string_view, 4> kNames = {"day", "week", "month", "year"};
constexpr std::array<char, 4> kSuffixes = {'d', 'w', 'm', 'y'};

int index_of(TimeUnit u) { return static_cast<int>(u); }

[[noreturn]] void throw_conversion(DiagCode code, std::string message) {
    throw ConversionError({Diagnostic{Severity::error, code, std::move(message), {}, {}}});
}

}  // namespace

std::string_view unit_name(TimeUnit u) { return kNames[index_of(u)]; }

char unit_suffix(TimeUnit u) { return kSuffixes[index_of(u)]; }

std::optional<TimeUnit> unit_from_suffix(char c) {
    for (int i = 0; i < 4; ++i) {
        if (kSuffixes[i] == c) {
            return static_cast<TimeUnit>(i);
        }
    }
    return std::nullopt;
}

TimeUnit unit_above(TimeUnit u) {
    if (u == TimeUnit::year) {
        throw_conversion(DiagCode::invalid_params, "no unit above year");
    }
    return static_cast<TimeUnit>(index_of(u) + 1);
}

long long Calendar::days_per(TimeUnit u) const {
    switch (u) {
        case TimeUnit::day: return 1;
        case TimeUnit::week: return days_per_week;
        case TimeUnit::month: return days_per_week * weeks_per_month;
        case TimeUnit::year: return days_per_week * weeks_per_month * months_per_year;
    }
    return 1;
}

long long Calendar::ratio(TimeUnit from, TimeUnit to) const {
    const long long a = days_per(from);
    const long long b = days_per(to);
    return a >= b ? a / b : b / a;
}

Duration convert(const Duration& d, TimeUnit target, const Calendar& cal) {
    if (d.unit == target) {
        return d;
    }
    const long long from_days = cal.days_per(d.unit);
    const long long to_days = cal.days_per(target);
    if (from_days >= to_days) {
        // downward: exact by construction
        return {d.magnitude * (from_days / to_days), target, d.promoted};
    }
    const long long factor = to_days / from_days;
    if (d.magnitude % factor != 0) {
        throw ConversionError({Diagnostic{
            Severity::error, DiagCode::inexact_conversion,
            std::to_string(d.magnitude) + " " + std::string(unit_name(d.unit)) +
                (d.magnitude == 1 ? "" : "s") + " is not a whole number of " +
                std::string(unit_name(target)) + "s",
            {},
            {}}});
    }
    return {d.magnitude / factor, target, d.promoted};
}

long long normalize_to_days(const Duration& d, const Calendar& cal) {
    return d.magnitude * cal.days_per(d.unit);
}

std::string format_compact(const Duration& d) {
    return std::to_string(d.magnitude) + unit_suffix(d.unit);
}

std::optional<Duration> parse_compact_duration(std::string_view text) {
    if (text.size() < 2) {
        return std::nullopt;
    }
    const auto unit = unit_from_suffix(text.back());
    if (!unit) {
        return std::nullopt;
    }
    long long magnitude = 0;
    for (size_t i = 0; i + 1 < text.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
            return std::nullopt;
        }
        magnitude = magnitude * 10 + (text[i] - '0');
        if (magnitude > 1'000'000'000) {
            return std::nullopt;
        }
    }
    return Duration{magnitude, *unit, false};
}

std::string format_long(const Duration& d) {
    std::string text = std::to_string(d.magnitude) + " " + std::string(unit_name(d.unit));
    if (d.magnitude != 1) {
        text += "s";
    }
    return text;
}

}  // namespace simproj

#pragma once

#include <optional>

#include "simproj/time.hpp"

namespace simproj {

// Global estimation defaults. `alpha` is the cycles-per-module ratio used by
// the duration formulas; the calendar carries the unit conversion factors.
// In the stock setups they coincide (5 days/week, 4 weeks/month).
struct EstimateParams {
    Duration default_cycle_period = days(1);  // global X
    long long alpha = 5;
    long long default_cycles = 5;             // defaults to alpha when unset
    Calendar calendar;

    bool operator==(const EstimateParams&) const = default;
};

// Params as declared in a plan file or on the command line: every field
// optional so later layers can tell "set" from "defaulted".
struct ParamsFragment {
    std::optional<Duration> cycle_period;
    std::optional<long long> alpha;
    std::optional<long long> cycles;

    bool operator==(const ParamsFragment&) const = default;
};

// Layered resolution: built-in defaults, overridden by `file`, overridden by
// `overrides`. When no layer sets cycles, it follows the effective alpha.
// Throws ConversionError(invalid_params) on nonpositive alpha or cycles.
EstimateParams resolve_params(const ParamsFragment& file, const ParamsFragment& overrides = {});

}  // namespace simproj

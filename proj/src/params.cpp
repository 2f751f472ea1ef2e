#include "simproj/params.hpp"

namespace simproj {

EstimateParams resolve_params(const ParamsFragment& file, const ParamsFragment& overrides) {
    EstimateParams params;

    auto pick = [](const auto& high, const auto& low) { return high ? high : low; };

    if (auto x = pick(overrides.cycle_period, file.cycle_period)) {
        params.default_cycle_period = *x;
    }
    if (auto alpha = pick(overrides.alpha, file.alpha)) {
        params.alpha = *alpha;
    }
    if (auto cycles = pick(overrides.cycles, file.cycles)) {
        params.default_cycles = *cycles;
    } else {
        params.default_cycles = params.alpha;  // cycles follow alpha unless set
    }

    std::vector<Diagnostic> diags;
    if (params.alpha < 1) {
        diags.push_back({Severity::error, DiagCode::invalid_params,
                         "alpha must be at least 1", {}, {}});
    }
    if (params.default_cycles < 1) {
        diags.push_back({Severity::error, DiagCode::invalid_params,
                         "cycles must be at least 1", {}, {}});
    }
    if (params.default_cycle_period.magnitude < 1) {
        diags.push_back({Severity::error, DiagCode::invalid_params,
                         "cycle period must be positive", {}, {}});
    }
    if (!diags.empty()) {
        throw ConversionError(std::move(diags));
    }
    return params;
}

}  // namespace simproj

#pragma once

#include <array>
#include <string>
#include <vector>

#include "tdprplan/types.hpp"

namespace tdprplan {

/// 24-hour expected generation profile of one VRE plant.
struct ForecastProfile {
    std::string plant;
    std::array<double, kHoursPerDay> values{};  // MW
};

/// System forecast error samples, indexed (scenario, day, hour).
/// Mean over (s,d) with weight p_s/D is zero per hour by construction.
struct ErrorSamples {
    int num_scenarios = 0;
    int num_days = 0;
    std::vector<double> values;  // (s*D + d)*H + h

    double at(int s, int d, int h) const {
        return values[(static_cast<std::size_t>(s) * num_days + d) * kHoursPerDay + h];
    }
    double& at(int s, int d, int h) {
        return values[(static_cast<std::size_t>(s) * num_days + d) * kHoursPerDay + h];
    }
};

enum class HourBoundary {
    kWrap,      // hour 24 pairs with hour 1 of the same (s,d)
    kTruncate,  // hour 24 entries are 0 and flagged
};

/// |error variation| samples; entry at hour h covers the h -> h+1 transition.
struct VariationSamples {
    int num_scenarios = 0;
    int num_days = 0;
    std::vector<double> values;  // layout as ErrorSamples, all >= 0
    bool truncated_last_hour = false;

    double at(int s, int d, int h) const {
        return values[(static_cast<std::size_t>(s) * num_days + d) * kHoursPerDay + h];
    }
    double& at(int s, int d, int h) {
        return values[(static_cast<std::size_t>(s) * num_days + d) * kHoursPerDay + h];
    }
};

/// Hourly reserve requirement and its two components.
struct TdprProfile {
    std::array<double, kHoursPerDay> tdpr{};
    std::array<double, kHoursPerDay> mean_component{};
    std::array<double, kHoursPerDay> cvar_component{};
    double lambda = 0.0;
    double beta = 1.0;
};

/// Per-hour probability-weighted average of the scenario samples.
ForecastProfile hourly_forecast(const ScenarioSet& scenarios, const std::string& plant);

/// System forecast error: per sample, the weighted sum over plants of
/// (scenario value - forecast). Weights are fixed investment levels in [0,1].
ErrorSamples aggregate_error(const ScenarioSet& scenarios,
                             const std::vector<std::string>& plants,
                             const std::vector<double>& weights);

/// Magnitude of the hour-to-hour error change within each (scenario, day).
VariationSamples error_variation(const ErrorSamples& errors,
                                 HourBoundary boundary = HourBoundary::kWrap);

/// Expected value of the worst-beta probability mass. The boundary sample is
/// split fractionally, so the result is continuous in beta and equals the
/// Rockafellar-Uryasev optimum. beta = 1 gives the plain mean.
double cvar_empirical(const std::vector<double>& samples,
                      const std::vector<double>& probs, double beta);

/// Combines mean and CVaR of the variation samples per hour. Sample weight is
/// p_s * day_weight_d / D; day weights default to 1 (full chronology). When a
/// clustered subset is used, pass the representative-day weights.
TdprProfile tdpr_profile(const VariationSamples& variations,
                         const ScenarioSet& scenarios, const ReserveConfig& cfg,
                         const std::vector<double>& day_weights = {});

/// Convenience: full pipeline for a plant subset with investment weights.
TdprProfile compute_tdpr(const ScenarioSet& scenarios,
                         const std::vector<std::string>& plants,
                         const std::vector<double>& weights, const ReserveConfig& cfg,
                         HourBoundary boundary = HourBoundary::kWrap);

}  // namespace tdprplan

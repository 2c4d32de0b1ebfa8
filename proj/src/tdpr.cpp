#include "tdprplan/tdpr.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace tdprplan {

ForecastProfile hourly_forecast(const ScenarioSet& scenarios, const std::string& plant) {
    const std::size_t pi = scenarios.plant_index(plant);
    ForecastProfile out;
    out.plant = plant;
    const double inv_days = 1.0 / scenarios.num_days;
    for (int h = 0; h < kHoursPerDay; ++h) {
        double acc = 0.0;
        for (int s = 0; s < scenarios.num_scenarios; ++s) {
            const double w = scenarios.prob[s] * inv_days;
            for (int d = 0; d < scenarios.num_days; ++d)
                acc += w * scenarios.at(pi, s, d, h);
        }
        out.values[h] = acc;
    }
    return out;
}

ErrorSamples aggregate_error(const ScenarioSet& scenarios,
                             const std::vector<std::string>& plants,
                             const std::vector<double>& weights) {
    if (plants.size() != weights.size())
        throw ValidationError("aggregate_error: plants and weights length mismatch");
    for (double w : weights)
        if (!(w >= 0.0 && w <= 1.0))
            throw ValidationError("aggregate_error: weight outside [0,1]");

    ErrorSamples err;
    err.num_scenarios = scenarios.num_scenarios;
    err.num_days = scenarios.num_days;
    err.values.assign(static_cast<std::size_t>(err.num_scenarios) * err.num_days *
                          kHoursPerDay,
                      0.0);
    for (std::size_t i = 0; i < plants.size(); ++i) {
        if (weights[i] == 0.0) continue;
        const std::size_t pi = scenarios.plant_index(plants[i]);
        const ForecastProfile fc = hourly_forecast(scenarios, plants[i]);
        for (int s = 0; s < err.num_scenarios; ++s)
            for (int d = 0; d < err.num_days; ++d)
                for (int h = 0; h < kHoursPerDay; ++h)
                    err.at(s, d, h) +=
                        weights[i] * (scenarios.at(pi, s, d, h) - fc.values[h]);
    }
    return err;
}

VariationSamples error_variation(const ErrorSamples& errors, HourBoundary boundary) {
    VariationSamples var;
    var.num_scenarios = errors.num_scenarios;
    var.num_days = errors.num_days;
    var.values.resize(errors.values.size());
    var.truncated_last_hour = (boundary == HourBoundary::kTruncate);
    for (int s = 0; s < var.num_scenarios; ++s)
        for (int d = 0; d < var.num_days; ++d) {
            for (int h = 0; h < kHoursPerDay - 1; ++h)
                var.at(s, d, h) = std::abs(errors.at(s, d, h) - errors.at(s, d, h + 1));
            var.at(s, d, kHoursPerDay - 1) =
                boundary == HourBoundary::kWrap
                    ? std::abs(errors.at(s, d, kHoursPerDay - 1) - errors.at(s, d, 0))
                    : 0.0;
        }
    return var;
}

double cvar_empirical(const std::vector<double>& samples,
                      const std::vector<double>& probs, double beta) {
    if (samples.empty()) throw ValidationError("cvar_empirical: empty sample list");
    if (samples.size() != probs.size())
        throw ValidationError("cvar_empirical: samples and probs length mismatch");
    if (!(beta > 0.0 && beta <= 1.0))
        throw ValidationError("cvar_empirical: beta must be in (0,1]");
    double mass = std::accumulate(probs.begin(), probs.end(), 0.0);
    if (std::abs(mass - 1.0) > 1e-9)
        throw ValidationError("cvar_empirical: probabilities sum to " +
                              std::to_string(mass));

    std::vector<std::size_t> order(samples.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return samples[a] > samples[b];
    });

    double remaining = beta;
    double acc = 0.0;
    for (std::size_t idx : order) {
        if (remaining <= 0.0) break;
        const double take = std::min(remaining, probs[idx]);
        acc += take * samples[idx];
        remaining -= take;
    }
    return acc / beta;
}

TdprProfile tdpr_profile(const VariationSamples& variations, const ScenarioSet& scenarios,
                         const ReserveConfig& cfg, const std::vector<double>& day_weights) {
    if (variations.num_scenarios != scenarios.num_scenarios)
        throw ValidationError("tdpr_profile: scenario count mismatch");
    if (cfg.lambda < 0.0 || cfg.lambda > 1.0)
        throw ValidationError("tdpr_profile: lambda outside [0,1]");
    std::vector<double> dw = day_weights;
    if (dw.empty()) dw.assign(static_cast<std::size_t>(variations.num_days), 1.0);
    if (dw.size() != static_cast<std::size_t>(variations.num_days))
        throw ValidationError("tdpr_profile: day_weights length mismatch");
    const double total_w = std::accumulate(dw.begin(), dw.end(), 0.0);

    const std::size_t n =
        static_cast<std::size_t>(variations.num_scenarios) * variations.num_days;
    std::vector<double> samples(n), probs(n);
    TdprProfile out;
    out.lambda = cfg.lambda;
    out.beta = cfg.beta;
    for (int h = 0; h < kHoursPerDay; ++h) {
        std::size_t k = 0;
        double mean = 0.0;
        for (int s = 0; s < variations.num_scenarios; ++s)
            for (int d = 0; d < variations.num_days; ++d, ++k) {
                samples[k] = variations.at(s, d, h);
                probs[k] = scenarios.prob[s] * dw[d] / total_w;
                mean += probs[k] * samples[k];
            }
        out.mean_component[h] = mean;
        out.cvar_component[h] = cvar_empirical(samples, probs, cfg.beta);
        out.tdpr[h] =
            (1.0 - cfg.lambda) * mean + cfg.lambda * out.cvar_component[h];
    }
    return out;
}

TdprProfile compute_tdpr(const ScenarioSet& scenarios,
                         const std::vector<std::string>& plants,
                         const std::vector<double>& weights, const ReserveConfig& cfg,
                         HourBoundary boundary) {
    const ErrorSamples err = aggregate_error(scenarios, plants, weights);
    const VariationSamples var = error_variation(err, boundary);
    return tdpr_profile(var, scenarios, cfg);
}

}  // namespace tdprplan

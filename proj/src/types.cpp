#include "tdprplan/types.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace tdprplan {

std::size_t ScenarioSet::plant_index(const std::string& id) const {
    auto it = std::find(plants.begin(), plants.end(), id);
    if (it == plants.end())
        throw ValidationError("unknown plant id '" + id + "' in scenario set");
    return static_cast<std::size_t>(it - plants.begin());
}

bool ScenarioSet::has_plant(const std::string& id) const {
    return std::find(plants.begin(), plants.end(), id) != plants.end();
}

void ScenarioSet::validate() const {
    if (num_scenarios <= 0) throw ValidationError("scenario set: S must be >= 1");
    if (num_days <= 0) throw ValidationError("scenario set: D must be >= 1");
    const std::size_t expected = plants.size() * static_cast<std::size_t>(num_scenarios) *
                                static_cast<std::size_t>(num_days) * kHoursPerDay;
    if (values.size() != expected)
        throw ValidationError("scenario set: expected " + std::to_string(expected) +
                              " values, got " + std::to_string(values.size()));
    for (double v : values) {
        if (!std::isfinite(v)) throw ValidationError("scenario set: non-finite value");
        if (v < 0.0) throw ValidationError("scenario set: negative generation value");
    }
    if (prob.size() != static_cast<std::size_t>(num_scenarios))
        throw ValidationError("scenario set: probability vector length != S");
    double mass = 0.0;
    for (double p : prob) {
        if (!std::isfinite(p) || p < 0.0)
            throw ValidationError("scenario set: invalid scenario probability");
        mass += p;
    }
    if (std::abs(mass - 1.0) > 1e-9)
        throw ValidationError("probability mass " + std::to_string(mass) + " != 1");
}

std::vector<double> uniform_probabilities(int num_scenarios) {
    if (num_scenarios < 1)
        throw ValidationError("uniform_probabilities: S must be >= 1");
    return std::vector<double>(static_cast<std::size_t>(num_scenarios),
                               1.0 / num_scenarios);
}

std::size_t PlanningProblem::region_index(const std::string& id) const {
    auto it = std::find(regions.begin(), regions.end(), id);
    if (it == regions.end())
        throw ValidationError("unknown region '" + id + "'");
    return static_cast<std::size_t>(it - regions.begin());
}

void PlanningProblem::validate() const {
    if (regions.empty()) throw ValidationError("no regions defined");
    scenario_set.validate();

    auto check_region = [&](const std::string& owner, const std::string& region) {
        if (std::find(regions.begin(), regions.end(), region) == regions.end())
            throw ValidationError(owner + ": dangling region reference '" + region + "'");
    };

    for (const auto& p : dispatchables) {
        check_region("dispatchable '" + p.id + "'", p.region);
        if (p.gmax < 0 || p.gmin_stable < 0 || p.gmin_stable > p.gmax)
            throw ValidationError("dispatchable '" + p.id +
                                  "': require 0 <= gmin_stable <= gmax");
        if (p.ramp < 0) throw ValidationError("dispatchable '" + p.id + "': ramp < 0");
        if (p.var_cost < 0 || p.inv_cost < 0)
            throw ValidationError("dispatchable '" + p.id + "': negative cost");
        if (!std::isfinite(p.gmax) || !std::isfinite(p.ramp) ||
            !std::isfinite(p.var_cost) || !std::isfinite(p.inv_cost))
            throw ValidationError("dispatchable '" + p.id + "': non-finite field");
    }
    for (const auto& r : vre_plants) {
        check_region("vre plant '" + r.id + "'", r.region);
        if (!(r.capacity > 0) || !std::isfinite(r.capacity))
            throw ValidationError("vre plant '" + r.id + "': capacity must be > 0");
        if (r.inv_cost < 0 || !std::isfinite(r.inv_cost))
            throw ValidationError("vre plant '" + r.id + "': invalid inv_cost");
        if (!scenario_set.has_plant(r.profile_ref))
            throw ValidationError("vre plant '" + r.id + "': scenario set has no profile '" +
                                  r.profile_ref + "'");
        std::size_t pi = scenario_set.plant_index(r.profile_ref);
        for (int s = 0; s < scenario_set.num_scenarios; ++s)
            for (int d = 0; d < scenario_set.num_days; ++d)
                for (int h = 0; h < kHoursPerDay; ++h) {
                    double v = scenario_set.at(pi, s, d, h);
                    if (v > r.capacity + 1e-9)
                        throw ValidationError(
                            "vre plant '" + r.id + "': scenario value " + std::to_string(v) +
                            " MW exceeds capacity " + std::to_string(r.capacity) +
                            " MW at (scenario " + std::to_string(s + 1) + ", day " +
                            std::to_string(d + 1) + ", hour " + std::to_string(h + 1) + ")");
                }
    }
    for (const auto& l : lines) {
        check_region("line '" + l.id + "' from", l.from_region);
        check_region("line '" + l.id + "' to", l.to_region);
        if (l.from_region == l.to_region)
            throw ValidationError("line '" + l.id + "': from == to");
        if (!(l.fmax > 0) || !std::isfinite(l.fmax))
            throw ValidationError("line '" + l.id + "': fmax must be > 0");
        if (l.inv_cost < 0) throw ValidationError("line '" + l.id + "': negative inv_cost");
    }

    const std::size_t expected_demand = regions.size() *
                                        static_cast<std::size_t>(scenario_set.num_days) *
                                        kHoursPerDay;
    if (demand.size() != expected_demand)
        throw ValidationError("demand table: expected " + std::to_string(expected_demand) +
                              " entries, got " + std::to_string(demand.size()));
    for (double v : demand) {
        if (!std::isfinite(v)) throw ValidationError("demand table: non-finite value");
        if (v < 0) throw ValidationError("demand table: negative value");
    }

    if (reserve.lambda < 0 || reserve.lambda > 1)
        throw ValidationError("reserve.lambda must be in [0,1]");
    if (!(reserve.beta > 0) || reserve.beta > 1)
        throw ValidationError("reserve.beta must be in (0,1]");
    if (clustering.num_representative_days < 1 ||
        clustering.num_representative_days > scenario_set.num_days)
        throw ValidationError("clustering.K must be in [1, D]");
}

}  // namespace tdprplan

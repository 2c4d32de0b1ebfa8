#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tdprplan {

/// Raised on any input-file or invariant violation; message names the
/// offending field/plant/index.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

constexpr int kHoursPerDay = 24;

/// Hourly VRE generation samples indexed (plant, scenario, day, hour),
/// one month-block per instance. Immutable after construction.
struct ScenarioSet {
    std::vector<std::string> plants;
    int num_scenarios = 0;  // S
    int num_days = 0;       // D
    std::vector<double> values;  // MW, layout ((plant*S + s)*D + d)*H + h
    std::vector<double> prob;    // p_s, sums to 1

    std::size_t plant_index(const std::string& id) const;
    bool has_plant(const std::string& id) const;

    double at(std::size_t plant, int s, int d, int h) const {
        return values[((plant * num_scenarios + s) * num_days + d) * kHoursPerDay + h];
    }
    double& at(std::size_t plant, int s, int d, int h) {
        return values[((plant * num_scenarios + s) * num_days + d) * kHoursPerDay + h];
    }

    void validate() const;

    bool operator==(const ScenarioSet&) const = default;
};

/// S entries of 1/S each.
std::vector<double> uniform_probabilities(int num_scenarios);

struct DispatchablePlant {
    std::string id;
    std::string region;
    double gmax = 0.0;         // MW
    double gmin_stable = 0.0;  // MW
    double ramp = 0.0;         // MW/h
    double var_cost = 0.0;     // $/MWh
    double inv_cost = 0.0;     // $ annualized
    bool existing = false;
    bool investable_binary = false;
    bool must_run = false;

    bool operator==(const DispatchablePlant&) const = default;
};

struct VrePlant {
    std::string id;
    std::string region;
    double capacity = 0.0;  // MW
    std::string profile_ref;
    double inv_cost = 0.0;
    bool existing = false;
    bool investable_binary = false;
    bool curtailable = true;

    bool operator==(const VrePlant&) const = default;
};

struct NetworkLine {
    std::string id;
    std::string from_region;
    std::string to_region;
    double fmax = 0.0;  // MW
    double inv_cost = 0.0;
    bool existing = false;

    bool operator==(const NetworkLine&) const = default;
};

struct ReserveConfig {
    double lambda = 0.5;  // risk-aversion weight in [0,1]
    double beta = 0.1;    // tail probability in (0,1]
    bool enabled = true;

    bool operator==(const ReserveConfig&) const = default;
};

struct ClusterConfig {
    int num_representative_days = 1;  // K
    int seed = 0;

    bool operator==(const ClusterConfig&) const = default;
};

struct SolverConfig {
    double feasibility_tol = 1e-6;
    double optimality_tol = 1e-7;
    double mip_gap = 1e-4;
    long node_limit = 100000;

    bool operator==(const SolverConfig&) const = default;
};

struct InvestmentPolicy {
    std::optional<double> budget;           // $ cap on total investment
    std::optional<double> capacity_margin;  // fraction over peak demand

    bool operator==(const InvestmentPolicy&) const = default;
};

/// Everything one planning run needs. Immutable after load_problem.
struct PlanningProblem {
    std::vector<std::string> regions;
    std::vector<DispatchablePlant> dispatchables;
    std::vector<VrePlant> vre_plants;
    std::vector<NetworkLine> lines;
    std::vector<double> demand;  // MW, layout (region*D + d)*H + h
    ScenarioSet scenario_set;
    ReserveConfig reserve;
    ClusterConfig clustering;
    SolverConfig solver;
    InvestmentPolicy investment;

    std::size_t region_index(const std::string& id) const;

    double demand_at(std::size_t region, int d, int h) const {
        return demand[(region * scenario_set.num_days + d) * kHoursPerDay + h];
    }

    void validate() const;

    bool operator==(const PlanningProblem&) const = default;
};

}  // namespace tdprplan

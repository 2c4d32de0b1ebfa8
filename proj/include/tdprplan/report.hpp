#pragma once

#include <array>
#include <map>
#include <string>

#include "tdprplan/build.hpp"
#include "tdprplan/bnb.hpp"
#include "tdprplan/dayreduce.hpp"
#include "tdprplan/types.hpp"

namespace tdprplan {

struct CapacityAddition {
    std::string plant_class;  // dispatchable | vre | line
    std::string id;
    std::string region;
    double decided = 0.0;   // investment level in [0,1]
    double added_mw = 0.0;  // decided * capacity
};

/// Everything one planning run reports. Pure function of the Solution, so
/// re-emitting from a stored solution reproduces identical files.
struct RunReport {
    PlanMode mode = PlanMode::kWithTdpr;
    double lambda = 0.0;
    double beta = 1.0;
    int num_representative_days = 0;
    int seed = 0;

    Solution solution;
    std::vector<CapacityAddition> additions;
    std::array<double, kHoursPerDay> tdpr_total{};
    /// Diagnostic recomputation per region over that region's decided VRE
    /// subset; regional columns are not shares of the system total.
    std::map<std::string, std::array<double, kHoursPerDay>> tdpr_by_region;
    /// plant -> expected reserve MW per hour (probability-weighted)
    std::map<std::string, std::array<double, kHoursPerDay>> reserve_by_plant;
    /// line -> expected absolute flow MW averaged over samples and hours
    std::map<std::string, double> mean_abs_flow;
};

struct CompareReport {
    RunReport without_tdpr;
    RunReport hierarchical;
    RunReport cooptimized;
    double cost_of_hierarchy = 0.0;  // hierarchical minus co-optimized objective
};

/// cluster -> build -> solve -> extract -> summarize.
RunReport run_plan(const PlanningProblem& problem, PlanMode mode);

/// (1) plan without reserve coupling, (2) re-plan with coupling but VRE
/// choices pinned to stage 1, (3) co-optimized plan.
CompareReport run_compare(const PlanningProblem& problem);

/// Writes capacity_additions.csv, tdpr_profile.csv, costs.json,
/// reserve_allocation.csv and run_meta.json with stable column orders.
void emit_reports(const RunReport& report, const std::string& out_dir);

void emit_compare(const CompareReport& report, const std::string& out_dir);

}  // namespace tdprplan

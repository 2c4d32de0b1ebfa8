#pragma once

#include <map>
#include <string>

#include "tdprplan/dayreduce.hpp"
#include "tdprplan/model.hpp"
#include "tdprplan/types.hpp"

namespace tdprplan {

enum class PlanMode { kWithTdpr, kWithoutTdpr };

/// Symbolic variable names used by the planning model. All sample indices
/// are 1-based in names: g_<plant>_s2d1h7, TDPR_h13, xp_<plant>, ...
namespace var_name {
std::string invest_dispatchable(const std::string& id);
std::string invest_vre(const std::string& id);
std::string invest_line(const std::string& id);
std::string dispatch(const std::string& id, int s, int k, int h);
std::string vre_delivered(const std::string& id, int s, int k, int h);
std::string reserve(const std::string& id, int s, int k, int h);
std::string flow(const std::string& id, int s, int k, int h);
std::string deficit(const std::string& region, int s, int k, int h);
std::string error(int s, int k, int h);         // delta
std::string variation(int s, int k, int h);     // Delta
std::string cvar_excess(int s, int k, int h);   // omega
std::string cvar_threshold(int h);              // W
std::string mean_variation(int h);              // E
std::string cvar_value(int h);                  // CVaR
std::string tdpr(int h);                        // TDPR
}  // namespace var_name

/// Builds the expansion planning MILP over the representative days of
/// `clustering`. kWithoutTdpr omits the reserve coupling entirely (no
/// error/variation/CVaR/reserve columns or rows). Deficit slack carries a
/// penalty of 10x the highest dispatch cost per MWh.
MilpModel build_model(const PlanningProblem& problem, const DayClustering& clustering,
                      PlanMode mode);

/// Copy of `model` with the named VRE investment variables pinned.
MilpModel fix_vre_investments(const MilpModel& model,
                              const std::map<std::string, double>& values);

/// Pins every investment column (dispatchable, VRE and line) to its value in
/// `from`, for re-solving a decided plan under different constraints.
MilpModel fix_all_investments(const MilpModel& model, const Solution& from);

/// Symbolic unpacking of a raw column vector: recomputes the objective and
/// the investment/operating/penalty split, and checks every row within
/// `feasibility_tol`; violations downgrade the status to infeasible.
Solution extract_solution(const MilpModel& model, const std::vector<double>& raw,
                          SolveStatus status, double feasibility_tol = 1e-6);

}  // namespace tdprplan

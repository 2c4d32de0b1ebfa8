#pragma once

#include "tdprplan/model.hpp"
#include "tdprplan/simplex.hpp"

namespace tdprplan {

struct MilpOptions {
    LpOptions lp;
    double mip_gap = 1e-4;  // relative
    long node_limit = 100000;
    double integrality_tol = 1e-6;
};

/// Best-first branch and bound over the model's binary columns. Branching
/// picks the most fractional binary, ties broken by lowest column index;
/// node order ties break by insertion order, so results are deterministic.
Solution solve_milp(const MilpModel& model, const MilpOptions& options = {});

/// Convenience: solve the LP relaxation and wrap it in a Solution.
Solution solve_relaxation(const MilpModel& model, const LpOptions& options = {});

}  // namespace tdprplan

#pragma once

#include <vector>

#include "tdprplan/model.hpp"

namespace tdprplan {

struct LpOptions {
    double feasibility_tol = 1e-6;
    double optimality_tol = 1e-7;
    long max_iterations = 500000;
    long stall_limit = 1000;     // non-improving iterations before Bland's rule
    int refactor_interval = 100;  // pivots between LU refactorizations
};

struct LpResult {
    SolveStatus status = SolveStatus::kNumericalFailure;
    double objective = 0.0;
    std::vector<double> x;     // structural columns only
    std::vector<double> dual;  // row duals (final simplex multipliers)
    long iterations = 0;
};

/// Revised simplex with bounded variables: sparse LU basis factorization,
/// product-form eta updates, composite phase-1, Dantzig pricing with a
/// Bland's-rule fallback after a degeneracy stall. Integrality marks are
/// relaxed. Optional bound overrides replace the model's bounds (used by
/// branch and bound).
LpResult solve_lp(const MilpModel& model, const LpOptions& options = {},
                  const std::vector<double>* lower_override = nullptr,
                  const std::vector<double>* upper_override = nullptr);

}  // namespace tdprplan

#include "tdprplan/bnb.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace tdprplan {

namespace {

struct Node {
    std::vector<double> lower, upper;
    double bound;  // parent LP objective, valid lower bound (minimization)
    long id;
};

struct NodeOrder {
    bool operator()(const Node& a, const Node& b) const {
        if (a.bound != b.bound) return a.bound > b.bound;  // best-first
        return a.id > b.id;
    }
};

int most_fractional_binary(const MilpModel& model, const std::vector<double>& x,
                           const std::vector<double>& lo, const std::vector<double>& hi,
                           double tol) {
    int best = -1;
    double best_frac = tol;
    for (int j = 0; j < model.num_cols(); ++j) {
        if (!model.is_binary[j] || lo[j] == hi[j]) continue;
        const double frac = std::abs(x[j] - std::round(x[j]));
        if (frac > best_frac + 1e-12) {
            best_frac = frac;
            best = j;
        }
    }
    return best;
}

}  // namespace

Solution solve_relaxation(const MilpModel& model, const LpOptions& options) {
    LpResult lp = solve_lp(model, options);
    Solution sol;
    sol.status = lp.status;
    sol.objective = lp.objective;
    sol.values = lp.x;
    sol.iterations = lp.iterations;
    return sol;
}

Solution solve_milp(const MilpModel& model, const MilpOptions& opt) {
    Solution incumbent;
    incumbent.status = SolveStatus::kInfeasible;
    incumbent.objective = kInf;

    std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
    long next_id = 0;
    open.push({model.lower, model.upper, -kInf, next_id++});

    long nodes = 0;
    long iterations = 0;
    double best_bound = -kInf;

    auto rel_gap = [&]() {
        if (!std::isfinite(incumbent.objective)) return kInf;
        return (incumbent.objective - best_bound) /
               std::max(1.0, std::abs(incumbent.objective));
    };

    while (!open.empty()) {
        // global bound = best open node bound (best-first keeps it on top)
        best_bound = std::isfinite(open.top().bound)
                         ? open.top().bound
                         : best_bound;
        if (std::isfinite(incumbent.objective) && rel_gap() <= opt.mip_gap) break;
        if (nodes >= opt.node_limit) {
            incumbent.status = SolveStatus::kNodeLimit;
            break;
        }

        Node node = open.top();
        open.pop();
        ++nodes;
        LpResult lp = solve_lp(model, opt.lp, &node.lower, &node.upper);
        iterations += lp.iterations;
        if (lp.status == SolveStatus::kInfeasible) continue;
        if (lp.status == SolveStatus::kUnbounded) {
            incumbent.status = SolveStatus::kUnbounded;
            incumbent.iterations = iterations;
            incumbent.nodes = nodes;
            return incumbent;
        }
        if (lp.status != SolveStatus::kOptimal) {
            incumbent.status = SolveStatus::kNumericalFailure;
            incumbent.iterations = iterations;
            incumbent.nodes = nodes;
            return incumbent;
        }
        if (lp.objective >= incumbent.objective - 1e-12) continue;  // pruned

        const int branch_col = most_fractional_binary(model, lp.x, node.lower,
                                                      node.upper, opt.integrality_tol);
        if (branch_col < 0) {
            // integral: new incumbent (rounded onto the grid)
            Solution cand;
            cand.status = SolveStatus::kOptimal;
            cand.values = lp.x;
            for (int j = 0; j < model.num_cols(); ++j)
                if (model.is_binary[j]) cand.values[j] = std::round(cand.values[j]);
            cand.objective = lp.objective;
            if (cand.objective < incumbent.objective) incumbent = cand;
            continue;
        }

        Node down = node, up = node;
        down.upper[branch_col] = 0.0;
        down.bound = lp.objective;
        down.id = next_id++;
        up.lower[branch_col] = 1.0;
        up.bound = lp.objective;
        up.id = next_id++;
        open.push(std::move(down));
        open.push(std::move(up));
    }

    if (open.empty() && std::isfinite(incumbent.objective))
        best_bound = incumbent.objective;

    incumbent.nodes = nodes;
    incumbent.iterations = iterations;
    if (std::isfinite(incumbent.objective)) {
        incumbent.mip_gap = std::max(0.0, rel_gap());
        if (incumbent.status != SolveStatus::kNodeLimit)
            incumbent.status = incumbent.mip_gap <= opt.mip_gap
                                   ? SolveStatus::kOptimal
                                   : SolveStatus::kGapLimit;
        else
            incumbent.status = SolveStatus::kGapLimit;
    } else if (incumbent.status == SolveStatus::kNodeLimit) {
        incumbent.status = SolveStatus::kGapLimit;
    }
    return incumbent;
}

}  // namespace tdprplan

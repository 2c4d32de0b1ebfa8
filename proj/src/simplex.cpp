#include "tdprplan/simplex.hpp"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <limits>

namespace tdprplan {

namespace {

constexpr double kPivotTol = 1e-9;

enum class VarStatus : unsigned char { kBasic, kAtLower, kAtUpper, kFree };

struct Eta {
    int pivot_row;
    std::vector<std::pair<int, double>> column;  // sparse w = B^-1 a_q
    double pivot_value;
};

// Computational form: [A | I] x = b with slack bounds encoding row senses.
class SimplexSolver {
public:
    SimplexSolver(const MilpModel& model, const LpOptions& opt,
                  const std::vector<double>* lo_ov, const std::vector<double>* hi_ov)
        : opt_(opt), m_(model.num_rows()), n_struct_(model.num_cols()) {
        n_total_ = n_struct_ + m_;
        lower_.resize(n_total_);
        upper_.resize(n_total_);
        cost_.assign(n_total_, 0.0);
        for (int j = 0; j < n_struct_; ++j) {
            lower_[j] = lo_ov ? (*lo_ov)[j] : model.lower[j];
            upper_[j] = hi_ov ? (*hi_ov)[j] : model.upper[j];
            cost_[j] = model.objective[j];
        }
        for (int i = 0; i < m_; ++i) {
            const int j = n_struct_ + i;
            switch (model.senses[i]) {
                case RowSense::kLessEqual: lower_[j] = 0.0; upper_[j] = kInf; break;
                case RowSense::kGreaterEqual: lower_[j] = -kInf; upper_[j] = 0.0; break;
                case RowSense::kEqual: lower_[j] = upper_[j] = 0.0; break;
            }
        }
        b_ = model.rhs;

        cols_.resize(n_total_);
        for (const auto& t : model.triplets) cols_[t.col].push_back({t.row, t.value});
        for (int i = 0; i < m_; ++i) cols_[n_struct_ + i].push_back({i, 1.0});
    }

    LpResult run() {
        LpResult res;
        for (int j = 0; j < n_total_; ++j)
            if (lower_[j] > upper_[j] + opt_.feasibility_tol) {
                res.status = SolveStatus::kInfeasible;
                return res;
            }

        init_basis();
        if (!refactorize()) {
            res.status = SolveStatus::kNumericalFailure;
            return res;
        }
        compute_basic_values();

        // Phase 1: drive basic bound violations to zero.
        SolveStatus st = iterate(true);
        if (st != SolveStatus::kOptimal) {
            res.status = st == SolveStatus::kUnbounded ? SolveStatus::kNumericalFailure : st;
            res.iterations = iterations_;
            return res;
        }
        if (total_infeasibility() > opt_.feasibility_tol * (1.0 + norm_b())) {
            res.status = SolveStatus::kInfeasible;
            res.iterations = iterations_;
            return res;
        }

        st = iterate(false);
        res.status = st;
        res.iterations = iterations_;
        if (st != SolveStatus::kOptimal && st != SolveStatus::kUnbounded) return res;

        res.x.resize(n_struct_);
        double obj = 0.0;
        for (int j = 0; j < n_struct_; ++j) {
            res.x[j] = value_[j];
            obj += cost_[j] * value_[j];
        }
        res.objective = obj;
        res.dual = last_duals_;
        return res;
    }

private:
    const LpOptions opt_;
    int m_, n_struct_, n_total_;
    std::vector<double> lower_, upper_, cost_, b_;
    std::vector<std::vector<std::pair<int, double>>> cols_;

    std::vector<int> basic_;          // row position -> column
    std::vector<int> basic_pos_;      // column -> row position or -1
    std::vector<VarStatus> status_;
    std::vector<double> value_;       // current value of every column
    std::vector<double> last_duals_;

    Eigen::SparseMatrix<double> bmat_;
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu_;
    std::vector<Eta> etas_;
    long iterations_ = 0;

    void init_basis() {
        basic_.resize(m_);
        basic_pos_.assign(n_total_, -1);
        status_.assign(n_total_, VarStatus::kAtLower);
        value_.assign(n_total_, 0.0);
        for (int j = 0; j < n_struct_; ++j) {
            if (std::isfinite(lower_[j])) {
                status_[j] = VarStatus::kAtLower;
                value_[j] = lower_[j];
            } else if (std::isfinite(upper_[j])) {
                status_[j] = VarStatus::kAtUpper;
                value_[j] = upper_[j];
            } else {
                status_[j] = VarStatus::kFree;
                value_[j] = 0.0;
            }
        }
        for (int i = 0; i < m_; ++i) {
            const int j = n_struct_ + i;
            basic_[i] = j;
            basic_pos_[j] = i;
            status_[j] = VarStatus::kBasic;
        }
    }

    bool refactorize() {
        etas_.clear();
        if (m_ == 0) return true;
        bmat_.resize(m_, m_);
        std::vector<Eigen::Triplet<double>> trips;
        for (int i = 0; i < m_; ++i)
            for (const auto& [r, v] : cols_[basic_[i]]) trips.emplace_back(r, i, v);
        bmat_.setFromTriplets(trips.begin(), trips.end());
        lu_.compute(bmat_);
        return lu_.info() == Eigen::Success;
    }

    // x = B^-1 v
    void ftran(Eigen::VectorXd& v) {
        if (m_ == 0) return;
        v = lu_.solve(v);
        for (const auto& e : etas_) {
            double& xr = v[e.pivot_row];
            xr /= e.pivot_value;
            for (const auto& [i, w] : e.column)
                if (i != e.pivot_row) v[i] -= w * xr;
        }
    }

    // y = B^-T c
    void btran(Eigen::VectorXd& c) {
        if (m_ == 0) return;
        for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
            double s = c[it->pivot_row];
            for (const auto& [i, w] : it->column)
                if (i != it->pivot_row) s -= c[i] * w;
            c[it->pivot_row] = s / it->pivot_value;
        }
        c = lu_.transpose().solve(c);
    }

    void compute_basic_values() {
        Eigen::VectorXd r = Eigen::Map<const Eigen::VectorXd>(b_.data(), m_);
        for (int j = 0; j < n_total_; ++j) {
            if (status_[j] == VarStatus::kBasic || value_[j] == 0.0) continue;
            for (const auto& [i, v] : cols_[j]) r[i] -= v * value_[j];
        }
        ftran(r);
        for (int i = 0; i < m_; ++i) value_[basic_[i]] = r[i];
    }

    double total_infeasibility() const {
        double acc = 0.0;
        for (int i = 0; i < m_; ++i) {
            const int j = basic_[i];
            if (value_[j] < lower_[j]) acc += lower_[j] - value_[j];
            if (value_[j] > upper_[j]) acc += value_[j] - upper_[j];
        }
        return acc;
    }

    double norm_b() const {
        double n = 0.0;
        for (double v : b_) n = std::max(n, std::abs(v));
        return n;
    }

    double phase_cost(int col, bool phase1) const {
        if (!phase1) return cost_[col];
        if (status_[col] != VarStatus::kBasic) return 0.0;
        if (value_[col] < lower_[col] - opt_.feasibility_tol) return -1.0;
        if (value_[col] > upper_[col] + opt_.feasibility_tol) return 1.0;
        return 0.0;
    }

    SolveStatus iterate(bool phase1) {
        long stall = 0;
        bool bland = false;
        double last_merit = merit(phase1);
        while (true) {
            if (iterations_ >= opt_.max_iterations)
                return SolveStatus::kNumericalFailure;
            if (phase1 && total_infeasibility() <=
                              opt_.feasibility_tol * (1.0 + norm_b()))
                return SolveStatus::kOptimal;

            Eigen::VectorXd y(m_);
            for (int i = 0; i < m_; ++i) y[i] = phase_cost(basic_[i], phase1);
            btran(y);
            last_duals_.assign(y.data(), y.data() + m_);

            // pricing
            int enter = -1;
            int dir = 0;
            double best_score = opt_.optimality_tol;
            for (int j = 0; j < n_total_; ++j) {
                if (status_[j] == VarStatus::kBasic) continue;
                if (lower_[j] == upper_[j]) continue;  // fixed
                double d = phase1 ? 0.0 : cost_[j];
                for (const auto& [i, v] : cols_[j]) d -= y[i] * v;
                int cand_dir = 0;
                if ((status_[j] == VarStatus::kAtLower || status_[j] == VarStatus::kFree) &&
                    d < -opt_.optimality_tol)
                    cand_dir = +1;
                else if ((status_[j] == VarStatus::kAtUpper ||
                          status_[j] == VarStatus::kFree) &&
                         d > opt_.optimality_tol)
                    cand_dir = -1;
                if (cand_dir == 0) continue;
                if (bland) {
                    enter = j;
                    dir = cand_dir;
                    break;
                }
                if (std::abs(d) > best_score) {
                    best_score = std::abs(d);
                    enter = j;
                    dir = cand_dir;
                }
            }
            if (enter < 0) return SolveStatus::kOptimal;

            // direction through the basis
            Eigen::VectorXd w = Eigen::VectorXd::Zero(m_);
            for (const auto& [i, v] : cols_[enter]) w[i] = v;
            ftran(w);

            // ratio test: entering moves by t*dir; basic i changes at rate
            // delta_i = -dir * w_i.
            double t_max = upper_[enter] - lower_[enter];  // bound flip distance
            bool flip_blocks = std::isfinite(t_max);
            double t_best = flip_blocks ? t_max : kInf;
            int leave = -1;       // row position
            int leave_bound = 0;  // -1 lower, +1 upper
            double leave_delta = 0.0;
            for (int i = 0; i < m_; ++i) {
                const double delta = -dir * w[i];
                if (std::abs(delta) < kPivotTol) continue;
                const int jb = basic_[i];
                const double xv = value_[jb];
                double t = kInf;
                int bound = 0;
                const bool below = xv < lower_[jb] - opt_.feasibility_tol;
                const bool above = xv > upper_[jb] + opt_.feasibility_tol;
                if (below) {
                    if (delta > 0) { t = (lower_[jb] - xv) / delta; bound = -1; }
                } else if (above) {
                    if (delta < 0) { t = (upper_[jb] - xv) / delta; bound = +1; }
                } else {
                    if (delta < 0 && std::isfinite(lower_[jb])) {
                        t = (lower_[jb] - xv) / delta;
                        bound = -1;
                    } else if (delta > 0 && std::isfinite(upper_[jb])) {
                        t = (upper_[jb] - xv) / delta;
                        bound = +1;
                    }
                }
                if (bound == 0) continue;
                t = std::max(t, 0.0);
                // prefer larger pivots among near-ties; Bland: lowest column index
                const bool tie = std::abs(t - t_best) <= 1e-9;
                bool better;
                if (t < t_best - 1e-9)
                    better = true;
                else if (!tie)
                    better = false;
                else if (leave < 0)
                    better = true;
                else if (bland)
                    better = basic_[i] < basic_[leave];
                else
                    better = std::abs(delta) > std::abs(leave_delta);
                if (better) {
                    t_best = t;
                    leave = i;
                    leave_bound = bound;
                    leave_delta = delta;
                }
            }

            if (!std::isfinite(t_best)) {
                if (phase1) return SolveStatus::kNumericalFailure;
                return SolveStatus::kUnbounded;
            }

            ++iterations_;
            const double t = t_best;
            // apply step
            value_[enter] += dir * t;
            for (int i = 0; i < m_; ++i)
                if (w[i] != 0.0) value_[basic_[i]] -= dir * t * w[i];

            if (leave < 0) {
                // entering variable travels to its opposite bound
                status_[enter] = dir > 0 ? VarStatus::kAtUpper : VarStatus::kAtLower;
                value_[enter] = dir > 0 ? upper_[enter] : lower_[enter];
            } else {
                const int jl = basic_[leave];
                if (std::abs(w[leave]) < kPivotTol)
                    return SolveStatus::kNumericalFailure;
                // leaving settles exactly on its bound
                value_[jl] = leave_bound < 0 ? lower_[jl] : upper_[jl];
                status_[jl] = leave_bound < 0 ? VarStatus::kAtLower : VarStatus::kAtUpper;
                basic_pos_[jl] = -1;
                basic_[leave] = enter;
                basic_pos_[enter] = leave;
                status_[enter] = VarStatus::kBasic;

                Eta eta;
                eta.pivot_row = leave;
                eta.pivot_value = w[leave];
                for (int i = 0; i < m_; ++i)
                    if (w[i] != 0.0) eta.column.emplace_back(i, w[i]);
                etas_.push_back(std::move(eta));
                if (static_cast<int>(etas_.size()) >= opt_.refactor_interval) {
                    if (!refactorize()) return SolveStatus::kNumericalFailure;
                    compute_basic_values();
                }
            }

            const double new_merit = merit(phase1);
            if (new_merit < last_merit - 1e-12) {
                stall = 0;
                last_merit = new_merit;
            } else if (++stall > opt_.stall_limit) {
                bland = true;
            }
        }
    }

    double merit(bool phase1) const {
        if (phase1) return total_infeasibility();
        double obj = 0.0;
        for (int j = 0; j < n_total_; ++j) obj += cost_[j] * value_[j];
        return obj;
    }
};

}  // namespace

LpResult solve_lp(const MilpModel& model, const LpOptions& options,
                  const std::vector<double>* lower_override,
                  const std::vector<double>* upper_override) {
    SimplexSolver solver(model, options, lower_override, upper_override);
    return solver.run();
}

}  // namespace tdprplan

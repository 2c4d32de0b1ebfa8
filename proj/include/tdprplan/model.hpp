#pragma once

#include <limits>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "tdprplan/types.hpp"

namespace tdprplan {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class RowSense { kLessEqual, kGreaterEqual, kEqual };

/// Bidirectional map between symbolic variable names and column numbers.
class VariableIndex {
public:
    int add(const std::string& name);
    int at(const std::string& name) const;
    std::optional<int> find(const std::string& name) const;
    const std::string& name(int col) const { return names_[col]; }
    int size() const { return static_cast<int>(names_.size()); }
    const std::vector<std::string>& names() const { return names_; }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, int> index_;
};

/// Sparse MILP in triplet form: min c'x, rows sense/rhs, l <= x <= u,
/// binary marks. Triplet emission order is canonicalized before handoff.
struct MilpModel {
    VariableIndex columns;
    std::vector<double> lower, upper, objective;
    std::vector<bool> is_binary;

    std::vector<std::string> row_names;
    std::vector<RowSense> senses;
    std::vector<double> rhs;

    struct Triplet {
        int row, col;
        double value;
        bool operator==(const Triplet&) const = default;
    };
    std::vector<Triplet> triplets;

    int num_cols() const { return columns.size(); }
    int num_rows() const { return static_cast<int>(row_names.size()); }

    int add_column(const std::string& name, double lo, double hi, double obj,
                   bool binary = false);
    int add_row(const std::string& name, RowSense sense, double rhs_value);
    /// Zero coefficients are dropped at the source.
    void add_coeff(int row, int col, double value);

    /// Sorts triplets by (row, col), merging duplicates and dropping zeros.
    void canonicalize();

    void fix_column(int col, double value) { lower[col] = upper[col] = value; }

    /// Row activity a_i . x for one row of a canonicalized model.
    std::vector<double> row_activities(const std::vector<double>& x) const;
};

enum class SolveStatus {
    kOptimal,
    kInfeasible,
    kUnbounded,
    kGapLimit,
    kNodeLimit,
    kNumericalFailure,
};

const char* to_string(SolveStatus status);

/// Result of an LP/MILP solve plus the symbolic accounting layered on top.
struct Solution {
    SolveStatus status = SolveStatus::kNumericalFailure;
    double objective = 0.0;
    std::vector<double> values;  // by column
    double mip_gap = 0.0;
    long iterations = 0;
    long nodes = 0;

    double investment_cost = 0.0;
    double operating_cost = 0.0;
    double penalty_cost = 0.0;
    std::string violation;  // first violated row/bound, empty when clean

    double value(const MilpModel& model, const std::string& name) const {
        return values[model.columns.at(name)];
    }
};

}  // namespace tdprplan

#include "tdprplan/model.hpp"

#include <algorithm>
#include <cmath>

namespace tdprplan {

int VariableIndex::add(const std::string& name) {
    auto [it, inserted] = index_.emplace(name, static_cast<int>(names_.size()));
    if (!inserted)
        throw ValidationError("variable '" + name + "' registered twice");
    names_.push_back(name);
    return it->second;
}

int VariableIndex::at(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end())
        throw ValidationError("unknown variable '" + name + "'");
    return it->second;
}

std::optional<int> VariableIndex::find(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

int MilpModel::add_column(const std::string& name, double lo, double hi, double obj,
                          bool binary) {
    const int col = columns.add(name);
    lower.push_back(lo);
    upper.push_back(hi);
    objective.push_back(obj);
    is_binary.push_back(binary);
    return col;
}

int MilpModel::add_row(const std::string& name, RowSense sense, double rhs_value) {
    row_names.push_back(name);
    senses.push_back(sense);
    rhs.push_back(rhs_value);
    return num_rows() - 1;
}

void MilpModel::add_coeff(int row, int col, double value) {
    if (value == 0.0) return;
    triplets.push_back({row, col, value});
}

void MilpModel::canonicalize() {
    std::sort(triplets.begin(), triplets.end(),
              [](const Triplet& a, const Triplet& b) {
                  return a.row != b.row ? a.row < b.row : a.col < b.col;
              });
    std::vector<Triplet> merged;
    merged.reserve(triplets.size());
    for (const auto& t : triplets) {
        if (!merged.empty() && merged.back().row == t.row && merged.back().col == t.col)
            merged.back().value += t.value;
        else
            merged.push_back(t);
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(),
                                [](const Triplet& t) { return t.value == 0.0; }),
                 merged.end());
    triplets = std::move(merged);
}

std::vector<double> MilpModel::row_activities(const std::vector<double>& x) const {
    std::vector<double> act(static_cast<std::size_t>(num_rows()), 0.0);
    for (const auto& t : triplets) act[t.row] += t.value * x[t.col];
    return act;
}

const char* to_string(SolveStatus status) {
    switch (status) {
        case SolveStatus::kOptimal: return "optimal";
        case SolveStatus::kInfeasible: return "infeasible";
        case SolveStatus::kUnbounded: return "unbounded";
        case SolveStatus::kGapLimit: return "gap-limit";
        case SolveStatus::kNodeLimit: return "node-limit";
        case SolveStatus::kNumericalFailure: return "numerical-failure";
    }
    return "unknown";
}

}  // namespace tdprplan

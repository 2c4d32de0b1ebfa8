#include "tdprplan/mps.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "tdprplan/io.hpp"

namespace tdprplan {

void write_mps(const MilpModel& model, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write file '" + path + "'");

    out << "NAME tdprplan\n";
    out << "ROWS\n";
    out << " N OBJ\n";
    for (int i = 0; i < model.num_rows(); ++i) {
        char sense = 'E';
        if (model.senses[i] == RowSense::kLessEqual) sense = 'L';
        if (model.senses[i] == RowSense::kGreaterEqual) sense = 'G';
        out << ' ' << sense << ' ' << model.row_names[i] << "\n";
    }

    // column-major view of the canonicalized triplets
    std::vector<std::vector<std::pair<int, double>>> cols(model.num_cols());
    for (const auto& t : model.triplets) cols[t.col].emplace_back(t.row, t.value);

    out << "COLUMNS\n";
    bool in_int = false;
    for (int j = 0; j < model.num_cols(); ++j) {
        if (model.is_binary[j] && !in_int) {
            out << " M" << j << " 'MARKER' 'INTORG'\n";
            in_int = true;
        } else if (!model.is_binary[j] && in_int) {
            out << " M" << j << " 'MARKER' 'INTEND'\n";
            in_int = false;
        }
        const std::string& name = model.columns.name(j);
        if (model.objective[j] != 0.0)
            out << ' ' << name << " OBJ " << format_value(model.objective[j]) << "\n";
        for (const auto& [row, value] : cols[j])
            out << ' ' << name << ' ' << model.row_names[row] << ' '
                << format_value(value) << "\n";
        if (model.objective[j] == 0.0 && cols[j].empty())
            out << ' ' << name << " OBJ 0\n";  // keep empty columns declared
    }
    if (in_int) out << " MEND 'MARKER' 'INTEND'\n";

    out << "RHS\n";
    for (int i = 0; i < model.num_rows(); ++i)
        if (model.rhs[i] != 0.0)
            out << " RHS " << model.row_names[i] << ' ' << format_value(model.rhs[i])
                << "\n";

    out << "BOUNDS\n";
    for (int j = 0; j < model.num_cols(); ++j) {
        const std::string& name = model.columns.name(j);
        const double lo = model.lower[j];
        const double hi = model.upper[j];
        if (lo == hi) {
            out << " FX BND " << name << ' ' << format_value(lo) << "\n";
            continue;
        }
        const bool lo_finite = std::isfinite(lo);
        const bool hi_finite = std::isfinite(hi);
        if (!lo_finite && !hi_finite) {
            out << " FR BND " << name << "\n";
            continue;
        }
        if (lo_finite && lo != 0.0)
            out << " LO BND " << name << ' ' << format_value(lo) << "\n";
        if (!lo_finite) out << " MI BND " << name << "\n";
        if (hi_finite) out << " UP BND " << name << ' ' << format_value(hi) << "\n";
    }
    out << "ENDATA\n";
}

namespace {

std::vector<std::string> tokens(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string t;
    while (ss >> t) out.push_back(t);
    return out;
}

double mps_number(const std::string& s, int lineno) {
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw ValidationError("mps line " + std::to_string(lineno) +
                              ": bad number '" + s + "'");
    }
}

}  // namespace

MilpModel read_mps(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open file '" + path + "'");

    MilpModel model;
    std::map<std::string, int> rows;
    std::map<std::string, int> col_of;
    std::string obj_row;
    std::string section;
    bool integer_block = false;
    std::string line;
    int lineno = 0;

    auto require_col = [&](const std::string& name) {
        auto it = col_of.find(name);
        if (it != col_of.end()) return it->second;
        const int j = model.add_column(name, 0.0, kInf, 0.0, integer_block);
        if (integer_block) model.upper[j] = 1.0;
        col_of.emplace(name, j);
        return j;
    };

    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '*') continue;
        if (!std::isspace(static_cast<unsigned char>(line[0]))) {
            auto t = tokens(line);
            section = t[0];
            if (section == "ENDATA") break;
            continue;
        }
        auto t = tokens(line);
        if (t.empty()) continue;

        if (section == "ROWS") {
            if (t.size() != 2)
                throw ValidationError("mps line " + std::to_string(lineno) +
                                      ": ROWS entry needs 2 fields");
            if (t[0] == "N") {
                if (obj_row.empty()) obj_row = t[1];
                continue;
            }
            RowSense sense;
            if (t[0] == "L") sense = RowSense::kLessEqual;
            else if (t[0] == "G") sense = RowSense::kGreaterEqual;
            else if (t[0] == "E") sense = RowSense::kEqual;
            else
                throw ValidationError("mps line " + std::to_string(lineno) +
                                      ": unknown row sense '" + t[0] + "'");
            rows.emplace(t[1], model.add_row(t[1], sense, 0.0));
        } else if (section == "COLUMNS") {
            if (t.size() >= 3 && t[1] == "'MARKER'") {
                if (t[2] == "'INTORG'") integer_block = true;
                else if (t[2] == "'INTEND'") integer_block = false;
                continue;
            }
            if (t.size() != 3 && t.size() != 5)
                throw ValidationError("mps line " + std::to_string(lineno) +
                                      ": COLUMNS entry needs 3 or 5 fields");
            const int j = require_col(t[0]);
            for (std::size_t k = 1; k + 1 < t.size(); k += 2) {
                const double v = mps_number(t[k + 1], lineno);
                if (t[k] == obj_row) {
                    model.objective[j] = v;
                } else {
                    auto it = rows.find(t[k]);
                    if (it == rows.end())
                        throw ValidationError("mps line " + std::to_string(lineno) +
                                              ": unknown row '" + t[k] + "'");
                    model.add_coeff(it->second, j, v);
                }
            }
        } else if (section == "RHS") {
            if (t.size() != 3 && t.size() != 5)
                throw ValidationError("mps line " + std::to_string(lineno) +
                                      ": RHS entry needs 3 or 5 fields");
            for (std::size_t k = 1; k + 1 < t.size(); k += 2) {
                auto it = rows.find(t[k]);
                if (it == rows.end())
                    throw ValidationError("mps line " + std::to_string(lineno) +
                                          ": unknown row '" + t[k] + "'");
                model.rhs[it->second] = mps_number(t[k + 1], lineno);
            }
        } else if (section == "RANGES") {
            throw ValidationError("mps line " + std::to_string(lineno) +
                                  ": RANGES not supported by this reader");
        } else if (section == "BOUNDS") {
            if (t.size() < 3)
                throw ValidationError("mps line " + std::to_string(lineno) +
                                      ": BOUNDS entry needs >= 3 fields");
            const std::string& kind = t[0];
            const int j = require_col(t[2]);
            if (kind == "FR") {
                model.lower[j] = -kInf;
                model.upper[j] = kInf;
            } else if (kind == "MI") {
                model.lower[j] = -kInf;
            } else if (kind == "PL") {
                model.upper[j] = kInf;
            } else if (kind == "BV") {
                model.is_binary[j] = true;
                model.lower[j] = 0.0;
                model.upper[j] = 1.0;
            } else {
                if (t.size() != 4)
                    throw ValidationError("mps line " + std::to_string(lineno) +
                                          ": bound needs a value");
                const double v = mps_number(t[3], lineno);
                if (kind == "LO") model.lower[j] = v;
                else if (kind == "UP") model.upper[j] = v;
                else if (kind == "FX") model.lower[j] = model.upper[j] = v;
                else
                    throw ValidationError("mps line " + std::to_string(lineno) +
                                          ": unknown bound type '" + kind + "'");
            }
        }
    }
    model.canonicalize();
    return model;
}

std::vector<double> read_solution(const std::string& path, const VariableIndex& index,
                                  int* missing, bool strict) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open file '" + path + "'");
    std::vector<double> x(static_cast<std::size_t>(index.size()), 0.0);
    std::vector<bool> seen(x.size(), false);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto t = tokens(line);
        if (t.empty()) continue;
        if (t.size() != 2)
            throw ValidationError(path + " line " + std::to_string(lineno) +
                                  ": expected 'name value'");
        auto col = index.find(t[0]);
        if (!col) {
            if (strict)
                throw ValidationError(path + " line " + std::to_string(lineno) +
                                      ": unknown variable '" + t[0] + "'");
            continue;
        }
        x[*col] = mps_number(t[1], lineno);
        seen[*col] = true;
    }
    if (missing)
        *missing = static_cast<int>(std::count(seen.begin(), seen.end(), false));
    return x;
}

}  // namespace tdprplan

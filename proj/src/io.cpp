#include "tdprplan/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace tdprplan {

std::string format_value(double v) {
    if (v == 0.0) v = 0.0;  // normalize -0
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) {
        // trim surrounding whitespace
        auto b = field.find_first_not_of(" \t\r");
        auto e = field.find_last_not_of(" \t\r");
        out.push_back(b == std::string::npos ? "" : field.substr(b, e - b + 1));
    }
    return out;
}

double parse_number(const std::string& s, const std::string& where, int lineno) {
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing");
        if (!std::isfinite(v))
            throw ValidationError(where + " line " + std::to_string(lineno) +
                                  ": non-finite value '" + s + "'");
        return v;
    } catch (const ValidationError&) {
        throw;
    } catch (const std::exception&) {
        throw ValidationError(where + " line " + std::to_string(lineno) +
                              ": cannot parse number '" + s + "'");
    }
}

int parse_int(const std::string& s, const std::string& where, int lineno) {
    double v = parse_number(s, where, lineno);
    int i = static_cast<int>(v);
    if (i != v)
        throw ValidationError(where + " line " + std::to_string(lineno) +
                              ": expected integer, got '" + s + "'");
    return i;
}

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open file '" + path + "'");
    return in;
}

struct ScenarioRecord {
    int scenario, day, hour;
    double value;
};

double get_num(const json& j, const std::string& key, const std::string& ctx) {
    if (!j.contains(key))
        throw ValidationError(ctx + ": missing field '" + key + "'");
    if (!j[key].is_number())
        throw ValidationError(ctx + ": field '" + key + "' must be a number");
    double v = j[key].get<double>();
    if (!std::isfinite(v))
        throw ValidationError(ctx + ": field '" + key + "' is non-finite");
    return v;
}

double get_num_or(const json& j, const std::string& key, double dflt,
                  const std::string& ctx) {
    return j.contains(key) ? get_num(j, key, ctx) : dflt;
}

std::string get_str(const json& j, const std::string& key, const std::string& ctx) {
    if (!j.contains(key) || !j[key].is_string())
        throw ValidationError(ctx + ": missing string field '" + key + "'");
    return j[key].get<std::string>();
}

bool get_bool_or(const json& j, const std::string& key, bool dflt,
                 const std::string& ctx) {
    if (!j.contains(key)) return dflt;
    if (!j[key].is_boolean())
        throw ValidationError(ctx + ": field '" + key + "' must be a boolean");
    return j[key].get<bool>();
}

}  // namespace

ScenarioSet load_scenarios(const std::string& scenarios_path) {
    auto in = open_or_throw(scenarios_path);
    std::string line;
    int lineno = 0;
    if (!std::getline(in, line))
        throw ValidationError(scenarios_path + ": empty file");
    ++lineno;
    auto header = split_csv_line(line);
    const std::vector<std::string> want = {"plant", "scenario", "day", "hour", "value_mw"};
    if (header != want)
        throw ValidationError(scenarios_path +
                              ": header must be 'plant,scenario,day,hour,value_mw'");

    std::map<std::string, std::vector<ScenarioRecord>> by_plant;
    int max_s = 0, max_d = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto f = split_csv_line(line);
        if (f.size() != 5)
            throw ValidationError(scenarios_path + " line " + std::to_string(lineno) +
                                  ": expected 5 fields");
        ScenarioRecord rec;
        rec.scenario = parse_int(f[1], scenarios_path, lineno);
        rec.day = parse_int(f[2], scenarios_path, lineno);
        rec.hour = parse_int(f[3], scenarios_path, lineno);
        rec.value = parse_number(f[4], scenarios_path, lineno);
        if (rec.hour < 1 || rec.hour > kHoursPerDay)
            throw ValidationError(scenarios_path + " line " + std::to_string(lineno) +
                                  ": hour must be in 1..24");
        if (rec.scenario < 1 || rec.day < 1)
            throw ValidationError(scenarios_path + " line " + std::to_string(lineno) +
                                  ": scenario and day are 1-based");
        max_s = std::max(max_s, rec.scenario);
        max_d = std::max(max_d, rec.day);
        by_plant[f[0]].push_back(rec);
    }
    if (by_plant.empty())
        throw ValidationError(scenarios_path + ": no data rows");

    ScenarioSet set;
    set.num_scenarios = max_s;
    set.num_days = max_d;
    for (auto& [id, _] : by_plant) set.plants.push_back(id);
    set.values.assign(set.plants.size() * static_cast<std::size_t>(max_s) * max_d *
                          kHoursPerDay,
                      std::nan(""));
    for (std::size_t pi = 0; pi < set.plants.size(); ++pi) {
        for (const auto& rec : by_plant[set.plants[pi]]) {
            double& slot = set.at(pi, rec.scenario - 1, rec.day - 1, rec.hour - 1);
            if (!std::isnan(slot))
                throw ValidationError(scenarios_path + ": duplicate entry for plant '" +
                                      set.plants[pi] + "' (scenario " +
                                      std::to_string(rec.scenario) + ", day " +
                                      std::to_string(rec.day) + ", hour " +
                                      std::to_string(rec.hour) + ")");
            slot = rec.value;
        }
    }
    for (std::size_t pi = 0; pi < set.plants.size(); ++pi)
        for (int s = 0; s < max_s; ++s)
            for (int d = 0; d < max_d; ++d)
                for (int h = 0; h < kHoursPerDay; ++h)
                    if (std::isnan(set.at(pi, s, d, h)))
                        throw ValidationError(
                            scenarios_path + ": missing entry for plant '" + set.plants[pi] +
                            "' (scenario " + std::to_string(s + 1) + ", day " +
                            std::to_string(d + 1) + ", hour " + std::to_string(h + 1) + ")");
    set.prob = uniform_probabilities(max_s);
    set.validate();
    return set;
}

namespace {

std::vector<double> load_probabilities(const std::string& path, int S) {
    auto in = open_or_throw(path);
    std::string line;
    int lineno = 0;
    if (!std::getline(in, line)) throw ValidationError(path + ": empty file");
    ++lineno;
    if (split_csv_line(line) != std::vector<std::string>{"scenario", "p"})
        throw ValidationError(path + ": header must be 'scenario,p'");
    std::vector<double> prob(static_cast<std::size_t>(S), std::nan(""));
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto f = split_csv_line(line);
        if (f.size() != 2)
            throw ValidationError(path + " line " + std::to_string(lineno) +
                                  ": expected 2 fields");
        int s = parse_int(f[0], path, lineno);
        if (s < 1 || s > S)
            throw ValidationError(path + " line " + std::to_string(lineno) +
                                  ": scenario out of range 1.." + std::to_string(S));
        prob[s - 1] = parse_number(f[1], path, lineno);
    }
    for (int s = 0; s < S; ++s)
        if (std::isnan(prob[s]))
            throw ValidationError(path + ": missing probability for scenario " +
                                  std::to_string(s + 1));
    return prob;
}

std::vector<double> load_demand(const std::string& path,
                                const std::vector<std::string>& regions, int D) {
    auto in = open_or_throw(path);
    std::string line;
    int lineno = 0;
    if (!std::getline(in, line)) throw ValidationError(path + ": empty file");
    ++lineno;
    if (split_csv_line(line) != std::vector<std::string>{"region", "day", "hour", "value_mw"})
        throw ValidationError(path + ": header must be 'region,day,hour,value_mw'");
    std::vector<double> demand(regions.size() * static_cast<std::size_t>(D) * kHoursPerDay,
                               std::nan(""));
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto f = split_csv_line(line);
        if (f.size() != 4)
            throw ValidationError(path + " line " + std::to_string(lineno) +
                                  ": expected 4 fields");
        auto it = std::find(regions.begin(), regions.end(), f[0]);
        if (it == regions.end())
            throw ValidationError(path + " line " + std::to_string(lineno) +
                                  ": unknown region '" + f[0] + "'");
        std::size_t n = static_cast<std::size_t>(it - regions.begin());
        int d = parse_int(f[1], path, lineno);
        int h = parse_int(f[2], path, lineno);
        if (d < 1 || d > D)
            throw ValidationError(path + " line " + std::to_string(lineno) +
                                  ": day out of range 1.." + std::to_string(D));
        if (h < 1 || h > kHoursPerDay)
            throw ValidationError(path + " line " + std::to_string(lineno) +
                                  ": hour out of range 1..24");
        demand[(n * D + d - 1) * kHoursPerDay + h - 1] = parse_number(f[3], path, lineno);
    }
    for (std::size_t i = 0; i < demand.size(); ++i)
        if (std::isnan(demand[i]))
            throw ValidationError(path + ": incomplete demand table (every region needs " +
                                  std::to_string(D) + " days x 24 hours)");
    return demand;
}

}  // namespace

PlanningProblem load_problem(const std::string& config_path,
                             const std::string& scenarios_path) {
    auto in = open_or_throw(config_path);
    json cfg;
    try {
        cfg = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ValidationError(config_path + ": " + e.what());
    }
    const fs::path base = fs::path(config_path).parent_path();

    PlanningProblem pb;
    if (!cfg.contains("regions") || !cfg["regions"].is_array())
        throw ValidationError(config_path + ": missing 'regions' array");
    for (const auto& r : cfg["regions"]) pb.regions.push_back(r.get<std::string>());

    for (const auto& j : cfg.value("dispatchables", json::array())) {
        DispatchablePlant p;
        p.id = get_str(j, "id", "dispatchable");
        const std::string ctx = "dispatchable '" + p.id + "'";
        p.region = get_str(j, "region", ctx);
        p.gmax = get_num(j, "gmax", ctx);
        p.gmin_stable = get_num_or(j, "gmin_stable", 0.0, ctx);
        p.ramp = get_num_or(j, "ramp", p.gmax, ctx);
        p.var_cost = get_num(j, "var_cost", ctx);
        p.inv_cost = get_num_or(j, "inv_cost", 0.0, ctx);
        p.existing = get_bool_or(j, "existing", false, ctx);
        p.investable_binary = get_bool_or(j, "investable_binary", false, ctx);
        p.must_run = get_bool_or(j, "must_run", false, ctx);
        pb.dispatchables.push_back(p);
    }
    for (const auto& j : cfg.value("vre_plants", json::array())) {
        VrePlant r;
        r.id = get_str(j, "id", "vre plant");
        const std::string ctx = "vre plant '" + r.id + "'";
        r.region = get_str(j, "region", ctx);
        r.capacity = get_num(j, "capacity", ctx);
        r.profile_ref = j.contains("profile_ref") ? get_str(j, "profile_ref", ctx) : r.id;
        r.inv_cost = get_num_or(j, "inv_cost", 0.0, ctx);
        r.existing = get_bool_or(j, "existing", false, ctx);
        r.investable_binary = get_bool_or(j, "investable_binary", false, ctx);
        r.curtailable = get_bool_or(j, "curtailable", true, ctx);
        pb.vre_plants.push_back(r);
    }
    for (const auto& j : cfg.value("lines", json::array())) {
        NetworkLine l;
        l.id = get_str(j, "id", "line");
        const std::string ctx = "line '" + l.id + "'";
        l.from_region = get_str(j, "from_region", ctx);
        l.to_region = get_str(j, "to_region", ctx);
        l.fmax = get_num(j, "fmax", ctx);
        l.inv_cost = get_num_or(j, "inv_cost", 0.0, ctx);
        l.existing = get_bool_or(j, "existing", false, ctx);
        pb.lines.push_back(l);
    }

    pb.scenario_set = load_scenarios(scenarios_path);
    if (cfg.contains("probabilities_file")) {
        pb.scenario_set.prob =
            load_probabilities((base / cfg["probabilities_file"].get<std::string>()).string(),
                               pb.scenario_set.num_scenarios);
    }
    pb.demand = load_demand((base / get_str(cfg, "demand_file", config_path)).string(),
                            pb.regions, pb.scenario_set.num_days);

    if (cfg.contains("reserve")) {
        const auto& j = cfg["reserve"];
        pb.reserve.lambda = get_num_or(j, "lambda", 0.5, "reserve");
        pb.reserve.beta = get_num_or(j, "beta", 0.1, "reserve");
        pb.reserve.enabled = get_bool_or(j, "enabled", true, "reserve");
    }
    if (cfg.contains("clustering")) {
        const auto& j = cfg["clustering"];
        pb.clustering.num_representative_days =
            static_cast<int>(get_num_or(j, "K", pb.scenario_set.num_days, "clustering"));
        pb.clustering.seed = static_cast<int>(get_num_or(j, "seed", 0, "clustering"));
    } else {
        pb.clustering.num_representative_days = pb.scenario_set.num_days;
    }
    if (cfg.contains("solver")) {
        const auto& j = cfg["solver"];
        pb.solver.feasibility_tol = get_num_or(j, "feasibility_tol", 1e-6, "solver");
        pb.solver.optimality_tol = get_num_or(j, "optimality_tol", 1e-7, "solver");
        pb.solver.mip_gap = get_num_or(j, "mip_gap", 1e-4, "solver");
        pb.solver.node_limit = static_cast<long>(get_num_or(j, "node_limit", 100000, "solver"));
    }
    if (cfg.contains("investment")) {
        const auto& j = cfg["investment"];
        if (j.contains("budget")) pb.investment.budget = get_num(j, "budget", "investment");
        if (j.contains("capacity_margin"))
            pb.investment.capacity_margin = get_num(j, "capacity_margin", "investment");
    }

    pb.validate();
    return pb;
}

void save_problem(const PlanningProblem& pb, const std::string& dir) {
    fs::create_directories(dir);
    const fs::path base(dir);

    json cfg;
    cfg["regions"] = pb.regions;
    cfg["dispatchables"] = json::array();
    for (const auto& p : pb.dispatchables)
        cfg["dispatchables"].push_back({{"id", p.id},
                                        {"region", p.region},
                                        {"gmax", p.gmax},
                                        {"gmin_stable", p.gmin_stable},
                                        {"ramp", p.ramp},
                                        {"var_cost", p.var_cost},
                                        {"inv_cost", p.inv_cost},
                                        {"existing", p.existing},
                                        {"investable_binary", p.investable_binary},
                                        {"must_run", p.must_run}});
    cfg["vre_plants"] = json::array();
    for (const auto& r : pb.vre_plants)
        cfg["vre_plants"].push_back({{"id", r.id},
                                     {"region", r.region},
                                     {"capacity", r.capacity},
                                     {"profile_ref", r.profile_ref},
                                     {"inv_cost", r.inv_cost},
                                     {"existing", r.existing},
                                     {"investable_binary", r.investable_binary},
                                     {"curtailable", r.curtailable}});
    cfg["lines"] = json::array();
    for (const auto& l : pb.lines)
        cfg["lines"].push_back({{"id", l.id},
                                {"from_region", l.from_region},
                                {"to_region", l.to_region},
                                {"fmax", l.fmax},
                                {"inv_cost", l.inv_cost},
                                {"existing", l.existing}});
    cfg["demand_file"] = "demand.csv";
    cfg["probabilities_file"] = "probabilities.csv";
    cfg["reserve"] = {{"lambda", pb.reserve.lambda},
                      {"beta", pb.reserve.beta},
                      {"enabled", pb.reserve.enabled}};
    cfg["clustering"] = {{"K", pb.clustering.num_representative_days},
                         {"seed", pb.clustering.seed}};
    cfg["solver"] = {{"feasibility_tol", pb.solver.feasibility_tol},
                     {"optimality_tol", pb.solver.optimality_tol},
                     {"mip_gap", pb.solver.mip_gap},
                     {"node_limit", pb.solver.node_limit}};
    if (pb.investment.budget || pb.investment.capacity_margin) {
        json inv;
        if (pb.investment.budget) inv["budget"] = *pb.investment.budget;
        if (pb.investment.capacity_margin)
            inv["capacity_margin"] = *pb.investment.capacity_margin;
        cfg["investment"] = inv;
    }
    std::ofstream((base / "config.json")) << cfg.dump(2) << "\n";

    std::ofstream sc(base / "scenarios.csv");
    sc << "plant,scenario,day,hour,value_mw\n";
    const auto& set = pb.scenario_set;
    for (std::size_t pi = 0; pi < set.plants.size(); ++pi)
        for (int s = 0; s < set.num_scenarios; ++s)
            for (int d = 0; d < set.num_days; ++d)
                for (int h = 0; h < kHoursPerDay; ++h)
                    sc << set.plants[pi] << ',' << s + 1 << ',' << d + 1 << ',' << h + 1
                       << ',' << format_value(set.at(pi, s, d, h)) << "\n";

    std::ofstream pr(base / "probabilities.csv");
    pr << "scenario,p\n";
    for (int s = 0; s < set.num_scenarios; ++s)
        pr << s + 1 << ',' << format_value(set.prob[s]) << "\n";

    std::ofstream dm(base / "demand.csv");
    dm << "region,day,hour,value_mw\n";
    for (std::size_t n = 0; n < pb.regions.size(); ++n)
        for (int d = 0; d < set.num_days; ++d)
            for (int h = 0; h < kHoursPerDay; ++h)
                dm << pb.regions[n] << ',' << d + 1 << ',' << h + 1 << ','
                   << format_value(pb.demand_at(n, d, h)) << "\n";
}

}  // namespace tdprplan

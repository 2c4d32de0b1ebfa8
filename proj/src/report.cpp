#include "tdprplan/report.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

#include "json.hpp"
#include "tdprplan/io.hpp"
#include "tdprplan/tdpr.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace tdprplan {

namespace {

DayClustering make_clustering(const PlanningProblem& pb) {
    const int K = pb.clustering.num_representative_days;
    if (K == pb.scenario_set.num_days) return trivial_clustering(K);
    return cluster_days(extract_day_features(pb), K, pb.clustering.seed);
}

RunReport summarize(const PlanningProblem& pb, const DayClustering& cl, PlanMode mode,
                    const MilpModel& model, const Solution& sol) {
    RunReport rep;
    rep.mode = mode;
    rep.lambda = pb.reserve.lambda;
    rep.beta = pb.reserve.beta;
    rep.num_representative_days = static_cast<int>(cl.medoids.size());
    rep.seed = pb.clustering.seed;
    rep.solution = sol;

    for (const auto& p : pb.dispatchables) {
        if (p.existing) continue;
        const double x = sol.value(model, var_name::invest_dispatchable(p.id));
        rep.additions.push_back({"dispatchable", p.id, p.region, x, x * p.gmax});
    }
    for (const auto& r : pb.vre_plants) {
        if (r.existing) continue;
        const double x = sol.value(model, var_name::invest_vre(r.id));
        rep.additions.push_back({"vre", r.id, r.region, x, x * r.capacity});
    }
    for (const auto& l : pb.lines) {
        if (l.existing) continue;
        const double x = sol.value(model, var_name::invest_line(l.id));
        rep.additions.push_back({"line", l.id, l.from_region + "-" + l.to_region, x,
                                 x * l.fmax});
    }

    const bool with_tdpr = mode == PlanMode::kWithTdpr && pb.reserve.enabled;
    if (with_tdpr) {
        for (int h = 0; h < kHoursPerDay; ++h)
            rep.tdpr_total[h] = sol.value(model, var_name::tdpr(h));

        // per-region diagnostics: exogenous recomputation on the decided subset
        for (const auto& region : pb.regions) {
            std::vector<std::string> plants;
            std::vector<double> weights;
            for (const auto& r : pb.vre_plants) {
                if (r.region != region) continue;
                plants.push_back(r.profile_ref);
                weights.push_back(r.existing
                                      ? 1.0
                                      : sol.value(model, var_name::invest_vre(r.id)));
            }
            std::array<double, kHoursPerDay> prof{};
            if (!plants.empty()) {
                const TdprProfile t =
                    compute_tdpr(pb.scenario_set, plants, weights, pb.reserve);
                prof = t.tdpr;
            }
            rep.tdpr_by_region.emplace(region, prof);
        }

        const int S = pb.scenario_set.num_scenarios;
        const int K = rep.num_representative_days;
        const double D = pb.scenario_set.num_days;
        for (const auto& p : pb.dispatchables) {
            std::array<double, kHoursPerDay> res{};
            for (int h = 0; h < kHoursPerDay; ++h)
                for (int s = 0; s < S; ++s)
                    for (int k = 0; k < K; ++k)
                        res[h] += pb.scenario_set.prob[s] * cl.weights[k] / D *
                                  sol.value(model, var_name::reserve(p.id, s, k, h));
            rep.reserve_by_plant.emplace(p.id, res);
        }
    }

    const int S = pb.scenario_set.num_scenarios;
    const int K = rep.num_representative_days;
    const double D = pb.scenario_set.num_days;
    for (const auto& l : pb.lines) {
        double acc = 0.0;
        for (int s = 0; s < S; ++s)
            for (int k = 0; k < K; ++k)
                for (int h = 0; h < kHoursPerDay; ++h)
                    acc += pb.scenario_set.prob[s] * cl.weights[k] / D / kHoursPerDay *
                           std::abs(sol.value(model, var_name::flow(l.id, s, k, h)));
        rep.mean_abs_flow.emplace(l.id, acc);
    }
    return rep;
}

MilpOptions milp_options(const PlanningProblem& pb) {
    MilpOptions opt;
    opt.lp.feasibility_tol = pb.solver.feasibility_tol;
    opt.lp.optimality_tol = pb.solver.optimality_tol;
    opt.mip_gap = pb.solver.mip_gap;
    opt.node_limit = pb.solver.node_limit;
    return opt;
}

Solution solve_and_extract(const PlanningProblem& pb, const MilpModel& model) {
    Solution sol = solve_milp(model, milp_options(pb));
    if (sol.status != SolveStatus::kOptimal && sol.status != SolveStatus::kGapLimit)
        throw std::runtime_error(std::string("solve stage failed: model is ") +
                                 to_string(sol.status));
    Solution out = extract_solution(model, sol.values, sol.status,
                                    pb.solver.feasibility_tol * 10);
    out.mip_gap = sol.mip_gap;
    out.iterations = sol.iterations;
    out.nodes = sol.nodes;
    return out;
}

}  // namespace

RunReport run_plan(const PlanningProblem& pb, PlanMode mode) {
    const DayClustering cl = make_clustering(pb);
    const MilpModel model = build_model(pb, cl, mode);
    const Solution sol = solve_and_extract(pb, model);
    return summarize(pb, cl, mode, model, sol);
}

CompareReport run_compare(const PlanningProblem& pb) {
    CompareReport cmp;
    const DayClustering cl = make_clustering(pb);

    const MilpModel base = build_model(pb, cl, PlanMode::kWithoutTdpr);
    const Solution sol_a = solve_and_extract(pb, base);
    cmp.without_tdpr = summarize(pb, cl, PlanMode::kWithoutTdpr, base, sol_a);

    const MilpModel with = build_model(pb, cl, PlanMode::kWithTdpr);
    std::map<std::string, double> stage1;
    for (const auto& r : pb.vre_plants)
        if (!r.existing)
            stage1[r.id] = sol_a.value(base, var_name::invest_vre(r.id));
    const MilpModel pinned = fix_vre_investments(with, stage1);
    const Solution sol_b = solve_and_extract(pb, pinned);
    cmp.hierarchical = summarize(pb, cl, PlanMode::kWithTdpr, pinned, sol_b);

    const Solution sol_c = solve_and_extract(pb, with);
    cmp.cooptimized = summarize(pb, cl, PlanMode::kWithTdpr, with, sol_c);

    cmp.cost_of_hierarchy = sol_b.objective - sol_c.objective;
    return cmp;
}

namespace {

json costs_json(const RunReport& rep) {
    return json{{"objective", rep.solution.objective},
                {"investment", rep.solution.investment_cost},
                {"operating", rep.solution.operating_cost},
                {"penalty", rep.solution.penalty_cost}};
}

}  // namespace

void emit_reports(const RunReport& rep, const std::string& out_dir) {
    fs::create_directories(out_dir);
    const fs::path base(out_dir);

    {
        std::ofstream out(base / "capacity_additions.csv");
        if (!out) throw std::runtime_error("cannot write to '" + out_dir + "'");
        out << "class,id,region,decided,added_mw\n";
        for (const auto& a : rep.additions)
            out << a.plant_class << ',' << a.id << ',' << a.region << ','
                << format_value(a.decided) << ',' << format_value(a.added_mw) << "\n";
    }
    {
        std::ofstream out(base / "tdpr_profile.csv");
        // regional columns are stand-alone recomputations per region's VRE
        // subset, not shares of the system total
        out << "hour,total_mw";
        for (const auto& [region, _] : rep.tdpr_by_region) out << ',' << region << "_mw";
        out << "\n";
        for (int h = 0; h < kHoursPerDay; ++h) {
            out << h + 1 << ',' << format_value(rep.tdpr_total[h]);
            for (const auto& [_, prof] : rep.tdpr_by_region)
                out << ',' << format_value(prof[h]);
            out << "\n";
        }
    }
    {
        std::ofstream out(base / "costs.json");
        out << costs_json(rep).dump(2) << "\n";
    }
    {
        std::ofstream out(base / "reserve_allocation.csv");
        out << "plant,hour,expected_mw\n";
        for (const auto& [plant, prof] : rep.reserve_by_plant)
            for (int h = 0; h < kHoursPerDay; ++h)
                out << plant << ',' << h + 1 << ',' << format_value(prof[h]) << "\n";
    }
    {
        json meta{{"mode", rep.mode == PlanMode::kWithTdpr ? "with-tdpr" : "without-tdpr"},
                  {"lambda", rep.lambda},
                  {"beta", rep.beta},
                  {"representative_days", rep.num_representative_days},
                  {"seed", rep.seed},
                  {"status", to_string(rep.solution.status)},
                  {"mip_gap", rep.solution.mip_gap},
                  {"objective", rep.solution.objective},
                  {"iterations", rep.solution.iterations},
                  {"nodes", rep.solution.nodes}};
        std::ofstream out(base / "run_meta.json");
        out << meta.dump(2) << "\n";
    }
}

void emit_compare(const CompareReport& cmp, const std::string& out_dir) {
    fs::create_directories(out_dir);
    emit_reports(cmp.without_tdpr, (fs::path(out_dir) / "without_tdpr").string());
    emit_reports(cmp.hierarchical, (fs::path(out_dir) / "hierarchical").string());
    emit_reports(cmp.cooptimized, (fs::path(out_dir) / "cooptimized").string());

    json j{{"without_tdpr", costs_json(cmp.without_tdpr)},
           {"hierarchical", costs_json(cmp.hierarchical)},
           {"cooptimized", costs_json(cmp.cooptimized)},
           {"cost_of_hierarchy", cmp.cost_of_hierarchy}};
    std::ofstream out(fs::path(out_dir) / "comparison.json");
    out << j.dump(2) << "\n";
}

}  // namespace tdprplan

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "tdprplan/build.hpp"
#include "tdprplan/bnb.hpp"
#include "tdprplan/dayreduce.hpp"
#include "tdprplan/io.hpp"
#include "tdprplan/mps.hpp"
#include "tdprplan/report.hpp"
#include "tdprplan/tdpr.hpp"

namespace fs = std::filesystem;
using namespace tdprplan;

namespace {

struct GlobalArgs {
    std::string config;
    std::string scenarios;
    std::string out;
    double lambda = -1.0;  // <0 means "use config"
    double beta = -1.0;
    int K = -1;
    int seed = -1;
    double gap = -1.0;
};

void add_common(CLI::App* cmd, GlobalArgs& g, bool needs_out) {
    cmd->add_option("--config", g.config, "system config JSON")->required();
    cmd->add_option("--scenarios", g.scenarios, "scenario CSV")->required();
    auto* out = cmd->add_option("--out", g.out, "output file or directory");
    if (needs_out && !std::getenv("TDPRPLAN_OUT")) out->required();
    cmd->add_option("--lambda", g.lambda, "risk-aversion factor override");
    cmd->add_option("--beta", g.beta, "CVaR tail probability override");
    cmd->add_option("-K,--representative-days", g.K, "cluster count override");
    cmd->add_option("--seed", g.seed, "clustering seed override");
    cmd->add_option("--gap", g.gap, "relative MIP gap override");
}

PlanningProblem load_with_overrides(const GlobalArgs& g) {
    PlanningProblem pb = load_problem(g.config, g.scenarios);
    if (g.lambda >= 0) pb.reserve.lambda = g.lambda;
    if (g.beta >= 0) pb.reserve.beta = g.beta;
    if (g.K >= 0) pb.clustering.num_representative_days = g.K;
    if (g.seed >= 0) pb.clustering.seed = g.seed;
    if (g.gap >= 0) pb.solver.mip_gap = g.gap;
    pb.validate();
    return pb;
}

std::string out_dir(const GlobalArgs& g) {
    if (!g.out.empty()) return g.out;
    if (const char* env = std::getenv("TDPRPLAN_OUT")) return env;
    throw std::runtime_error("no output location: pass --out or set TDPRPLAN_OUT");
}

PlanMode parse_mode(const std::string& mode) {
    if (mode == "with-tdpr") return PlanMode::kWithTdpr;
    if (mode == "without-tdpr") return PlanMode::kWithoutTdpr;
    throw std::runtime_error("mode must be with-tdpr or without-tdpr");
}

DayClustering clustering_for(const PlanningProblem& pb) {
    if (pb.clustering.num_representative_days == pb.scenario_set.num_days)
        return trivial_clustering(pb.scenario_set.num_days);
    return cluster_days(extract_day_features(pb),
                        pb.clustering.num_representative_days, pb.clustering.seed);
}

int cmd_tdpr_compute(const GlobalArgs& g, bool by_region) {
    const PlanningProblem pb = load_with_overrides(g);
    std::vector<std::string> plants;
    std::vector<double> weights;
    for (const auto& r : pb.vre_plants) {
        plants.push_back(r.profile_ref);
        weights.push_back(1.0);
    }
    const TdprProfile prof = compute_tdpr(pb.scenario_set, plants, weights, pb.reserve);

    const std::string path = out_dir(g);
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << "hour,mean_mw,cvar_mw,tdpr_mw";
    std::vector<std::pair<std::string, TdprProfile>> regional;
    if (by_region) {
        for (const auto& region : pb.regions) {
            std::vector<std::string> rp;
            for (const auto& r : pb.vre_plants)
                if (r.region == region) rp.push_back(r.profile_ref);
            if (rp.empty()) continue;
            regional.emplace_back(
                region, compute_tdpr(pb.scenario_set, rp,
                                     std::vector<double>(rp.size(), 1.0), pb.reserve));
            out << ',' << region << "_mw";
        }
    }
    out << "\n";
    for (int h = 0; h < kHoursPerDay; ++h) {
        out << h + 1 << ',' << format_value(prof.mean_component[h]) << ','
            << format_value(prof.cvar_component[h]) << ',' << format_value(prof.tdpr[h]);
        for (const auto& [_, rp] : regional) out << ',' << format_value(rp.tdpr[h]);
        out << "\n";
    }
    return 0;
}

int cmd_days_cluster(const GlobalArgs& g) {
    const PlanningProblem pb = load_with_overrides(g);
    const DayClustering cl = clustering_for(pb);
    const std::string path = out_dir(g);
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << "day,cluster,medoid,weight\n";
    for (std::size_t d = 0; d < cl.assignment.size(); ++d) {
        const int c = cl.assignment[d];
        out << d + 1 << ',' << c + 1 << ',' << cl.medoids[c] + 1 << ','
            << format_value(cl.weights[c]) << "\n";
    }
    return 0;
}

int cmd_plan_solve(const GlobalArgs& g, const std::string& mode) {
    const PlanningProblem pb = load_with_overrides(g);
    const RunReport rep = run_plan(pb, parse_mode(mode));
    emit_reports(rep, out_dir(g));
    const bool ok = rep.solution.status == SolveStatus::kOptimal ||
                    (rep.solution.status == SolveStatus::kGapLimit &&
                     rep.solution.mip_gap <= 10 * pb.solver.mip_gap);
    std::cout << "status " << to_string(rep.solution.status) << " objective "
              << format_value(rep.solution.objective) << "\n";
    return ok ? 0 : 1;
}

int cmd_plan_compare(const GlobalArgs& g) {
    const PlanningProblem pb = load_with_overrides(g);
    const CompareReport cmp = run_compare(pb);
    emit_compare(cmp, out_dir(g));
    std::cout << "cost_of_hierarchy " << format_value(cmp.cost_of_hierarchy) << "\n";
    return 0;
}

int cmd_export_mps(const GlobalArgs& g, const std::string& mode) {
    const PlanningProblem pb = load_with_overrides(g);
    const MilpModel model = build_model(pb, clustering_for(pb), parse_mode(mode));
    write_mps(model, out_dir(g));
    return 0;
}

int cmd_plan_resume(const GlobalArgs& g, const std::string& mode,
                    const std::string& solution_path) {
    const PlanningProblem pb = load_with_overrides(g);
    const DayClustering cl = clustering_for(pb);
    const MilpModel model = build_model(pb, cl, parse_mode(mode));
    int missing = 0;
    const auto raw = read_solution(solution_path, model.columns, &missing);
    if (missing > 0)
        std::cerr << "warning: " << missing << " columns defaulted to 0\n";
    const Solution sol =
        extract_solution(model, raw, SolveStatus::kOptimal, pb.solver.feasibility_tol * 10);
    if (sol.status == SolveStatus::kInfeasible) {
        std::cerr << "solution file violates " << sol.violation << "\n";
        return 1;
    }
    // summarize via the normal reporting path
    RunReport rep;
    {
        const PlanMode m = parse_mode(mode);
        // rebuild report from the extracted solution
        rep.mode = m;
        rep.lambda = pb.reserve.lambda;
        rep.beta = pb.reserve.beta;
        rep.num_representative_days = static_cast<int>(cl.medoids.size());
        rep.seed = pb.clustering.seed;
        rep.solution = sol;
        if (m == PlanMode::kWithTdpr && pb.reserve.enabled)
            for (int h = 0; h < kHoursPerDay; ++h)
                rep.tdpr_total[h] = sol.value(model, var_name::tdpr(h));
        for (const auto& p : pb.dispatchables)
            if (!p.existing) {
                const double x = sol.value(model, var_name::invest_dispatchable(p.id));
                rep.additions.push_back({"dispatchable", p.id, p.region, x, x * p.gmax});
            }
        for (const auto& r : pb.vre_plants)
            if (!r.existing) {
                const double x = sol.value(model, var_name::invest_vre(r.id));
                rep.additions.push_back({"vre", r.id, r.region, x, x * r.capacity});
            }
    }
    emit_reports(rep, out_dir(g));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"TDPR reserve sizing and expansion planning"};
    app.require_subcommand(1);
    GlobalArgs g;

    auto* tdpr_cmd = app.add_subcommand("tdpr", "reserve profile analysis");
    tdpr_cmd->require_subcommand(1);
    auto* compute = tdpr_cmd->add_subcommand("compute", "exogenous TDPR profile");
    bool by_region = false;
    add_common(compute, g, true);
    compute->add_flag("--by-region", by_region, "append per-region columns");

    auto* days_cmd = app.add_subcommand("days", "representative day selection");
    days_cmd->require_subcommand(1);
    auto* cluster = days_cmd->add_subcommand("cluster", "k-medoids day clustering");
    add_common(cluster, g, true);

    auto* plan_cmd = app.add_subcommand("plan", "expansion planning runs");
    plan_cmd->require_subcommand(1);
    auto* solve = plan_cmd->add_subcommand("solve", "single planning run");
    std::string mode = "with-tdpr";
    add_common(solve, g, true);
    solve->add_option("--mode", mode, "with-tdpr | without-tdpr");
    auto* compare = plan_cmd->add_subcommand("compare", "hierarchical vs co-optimized");
    add_common(compare, g, true);
    auto* resume = plan_cmd->add_subcommand("resume", "report from an external solution");
    std::string solution_path, resume_mode = "with-tdpr";
    add_common(resume, g, true);
    resume->add_option("--solution", solution_path, "column-value solution file")
        ->required();
    resume->add_option("--mode", resume_mode, "with-tdpr | without-tdpr");

    auto* model_cmd = app.add_subcommand("model", "model interchange");
    model_cmd->require_subcommand(1);
    auto* export_mps = model_cmd->add_subcommand("export-mps", "write the MILP as MPS");
    std::string export_mode = "with-tdpr";
    add_common(export_mps, g, true);
    export_mps->add_option("--mode", export_mode, "with-tdpr | without-tdpr");

    CLI11_PARSE(app, argc, argv);

    try {
        if (compute->parsed()) return cmd_tdpr_compute(g, by_region);
        if (cluster->parsed()) return cmd_days_cluster(g);
        if (solve->parsed()) return cmd_plan_solve(g, mode);
        if (compare->parsed()) return cmd_plan_compare(g);
        if (resume->parsed()) return cmd_plan_resume(g, resume_mode, solution_path);
        if (export_mps->parsed()) return cmd_export_mps(g, export_mode);
    } catch (const ValidationError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

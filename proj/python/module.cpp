#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tdprplan/dayreduce.hpp"
#include "tdprplan/io.hpp"
#include "tdprplan/mps.hpp"
#include "tdprplan/report.hpp"
#include "tdprplan/tdpr.hpp"

namespace py = pybind11;
using namespace tdprplan;

namespace {

ScenarioSet make_set(const std::vector<std::string>& plants, int S, int D,
                     const std::vector<double>& values,
                     const std::vector<double>& probs) {
    ScenarioSet set;
    set.plants = plants;
    set.num_scenarios = S;
    set.num_days = D;
    set.values = values;
    set.prob = probs.empty() ? uniform_probabilities(S) : probs;
    set.validate();
    return set;
}

py::dict profile_dict(const TdprProfile& prof) {
    std::vector<double> tdpr(prof.tdpr.begin(), prof.tdpr.end());
    std::vector<double> mean(prof.mean_component.begin(), prof.mean_component.end());
    std::vector<double> cvar(prof.cvar_component.begin(), prof.cvar_component.end());
    py::dict out;
    out["tdpr"] = tdpr;
    out["mean"] = mean;
    out["cvar"] = cvar;
    out["lambda"] = prof.lambda;
    out["beta"] = prof.beta;
    return out;
}

py::dict costs_dict(const Solution& sol) {
    py::dict out;
    out["status"] = std::string(to_string(sol.status));
    out["objective"] = sol.objective;
    out["investment"] = sol.investment_cost;
    out["operating"] = sol.operating_cost;
    out["penalty"] = sol.penalty_cost;
    out["mip_gap"] = sol.mip_gap;
    return out;
}

PlanMode mode_of(const std::string& mode) {
    if (mode == "with-tdpr") return PlanMode::kWithTdpr;
    if (mode == "without-tdpr") return PlanMode::kWithoutTdpr;
    throw ValidationError("mode must be with-tdpr or without-tdpr");
}

}  // namespace

PYBIND11_MODULE(_tdprplan, m) {
    m.doc() = "TDPR reserve sizing and expansion planning";

    py::register_exception<ValidationError>(m, "ValidationError");

    m.def("cvar_empirical", &cvar_empirical, py::arg("samples"), py::arg("probs"),
          py::arg("beta"),
          "Expected value of the worst-beta probability mass (fractional split).");

    m.def(
        "compute_tdpr",
        [](const std::vector<std::string>& plants, int num_scenarios, int num_days,
           const std::vector<double>& values, const std::vector<double>& weights,
           double lam, double beta, const std::vector<double>& probs) {
            const auto set = make_set(plants, num_scenarios, num_days, values, probs);
            ReserveConfig cfg{lam, beta, true};
            return profile_dict(compute_tdpr(set, plants, weights, cfg));
        },
        py::arg("plants"), py::arg("num_scenarios"), py::arg("num_days"),
        py::arg("values"), py::arg("weights"), py::arg("lambda_") = 0.5,
        py::arg("beta") = 0.1, py::arg("probs") = std::vector<double>{},
        "TDPR profile from flat samples laid out ((plant*S + s)*D + d)*24 + h.");

    m.def(
        "cluster_days",
        [](const std::vector<std::vector<double>>& vectors, int k, int seed) {
            std::vector<DayFeature> feats(vectors.size());
            for (std::size_t i = 0; i < vectors.size(); ++i) {
                feats[i].day = static_cast<int>(i);
                feats[i].vector = vectors[i];
            }
            const auto cl = cluster_days(feats, k, seed);
            py::dict out;
            out["medoids"] = cl.medoids;
            out["weights"] = cl.weights;
            out["assignment"] = cl.assignment;
            return out;
        },
        py::arg("vectors"), py::arg("k"), py::arg("seed") = 0,
        "Deterministic k-medoids (PAM) over explicit feature vectors.");

    m.def(
        "plan_solve",
        [](const std::string& config, const std::string& scenarios,
           const std::string& mode, const std::string& out_dir) {
            const PlanningProblem pb = load_problem(config, scenarios);
            const RunReport rep = run_plan(pb, mode_of(mode));
            if (!out_dir.empty()) emit_reports(rep, out_dir);
            py::dict out = costs_dict(rep.solution);
            std::vector<double> tdpr(rep.tdpr_total.begin(), rep.tdpr_total.end());
            out["tdpr"] = tdpr;
            py::list additions;
            for (const auto& a : rep.additions) {
                py::dict d;
                d["class"] = a.plant_class;
                d["id"] = a.id;
                d["region"] = a.region;
                d["decided"] = a.decided;
                d["added_mw"] = a.added_mw;
                additions.append(d);
            }
            out["additions"] = additions;
            return out;
        },
        py::arg("config"), py::arg("scenarios"), py::arg("mode") = "with-tdpr",
        py::arg("out_dir") = "",
        "Full planning run; writes the report files when out_dir is given.");

    m.def(
        "plan_compare",
        [](const std::string& config, const std::string& scenarios,
           const std::string& out_dir) {
            const PlanningProblem pb = load_problem(config, scenarios);
            const CompareReport cmp = run_compare(pb);
            if (!out_dir.empty()) emit_compare(cmp, out_dir);
            py::dict out;
            out["without_tdpr"] = costs_dict(cmp.without_tdpr.solution);
            out["hierarchical"] = costs_dict(cmp.hierarchical.solution);
            out["cooptimized"] = costs_dict(cmp.cooptimized.solution);
            out["cost_of_hierarchy"] = cmp.cost_of_hierarchy;
            return out;
        },
        py::arg("config"), py::arg("scenarios"), py::arg("out_dir") = "",
        "Hierarchical vs co-optimized comparison.");

    m.def(
        "export_mps",
        [](const std::string& config, const std::string& scenarios,
           const std::string& mode, const std::string& out_path) {
            const PlanningProblem pb = load_problem(config, scenarios);
            DayClustering cl;
            if (pb.clustering.num_representative_days == pb.scenario_set.num_days)
                cl = trivial_clustering(pb.scenario_set.num_days);
            else
                cl = cluster_days(extract_day_features(pb),
                                  pb.clustering.num_representative_days,
                                  pb.clustering.seed);
            write_mps(build_model(pb, cl, mode_of(mode)), out_path);
        },
        py::arg("config"), py::arg("scenarios"), py::arg("mode"), py::arg("out_path"),
        "Write the planning MILP as free-format MPS.");
}

#include "tdprplan/build.hpp"

#include <algorithm>
#include <cmath>

#include "tdprplan/tdpr.hpp"

namespace tdprplan {

namespace var_name {

namespace {
std::string sdh(int s, int k, int h) {
    return "_s" + std::to_string(s + 1) + "d" + std::to_string(k + 1) + "h" +
           std::to_string(h + 1);
}
}  // namespace

std::string invest_dispatchable(const std::string& id) { return "xp_" + id; }
std::string invest_vre(const std::string& id) { return "xr_" + id; }
std::string invest_line(const std::string& id) { return "xl_" + id; }
std::string dispatch(const std::string& id, int s, int k, int h) {
    return "g_" + id + sdh(s, k, h);
}
std::string vre_delivered(const std::string& id, int s, int k, int h) {
    return "gv_" + id + sdh(s, k, h);
}
std::string reserve(const std::string& id, int s, int k, int h) {
    return "r_" + id + sdh(s, k, h);
}
std::string flow(const std::string& id, int s, int k, int h) {
    return "f_" + id + sdh(s, k, h);
}
std::string deficit(const std::string& region, int s, int k, int h) {
    return "def_" + region + sdh(s, k, h);
}
std::string error(int s, int k, int h) { return "delta" + sdh(s, k, h); }
std::string variation(int s, int k, int h) { return "Delta" + sdh(s, k, h); }
std::string cvar_excess(int s, int k, int h) { return "omega" + sdh(s, k, h); }
std::string cvar_threshold(int h) { return "W_h" + std::to_string(h + 1); }
std::string mean_variation(int h) { return "E_h" + std::to_string(h + 1); }
std::string cvar_value(int h) { return "CVaR_h" + std::to_string(h + 1); }
std::string tdpr(int h) { return "TDPR_h" + std::to_string(h + 1); }

}  // namespace var_name

MilpModel build_model(const PlanningProblem& pb, const DayClustering& clustering,
                      PlanMode mode) {
    pb.validate();
    if (pb.dispatchables.empty() && pb.vre_plants.empty())
        throw ValidationError("build_model: empty system");
    const int D = pb.scenario_set.num_days;
    const int K = static_cast<int>(clustering.medoids.size());
    if (K < 1 || K > D)
        throw ValidationError("build_model: clustering inconsistent with D");
    double weight_sum = 0.0;
    for (std::size_t k = 0; k < clustering.weights.size(); ++k) {
        const int medoid = clustering.medoids[k];
        if (medoid < 0 || medoid >= D)
            throw ValidationError("build_model: medoid day out of range");
        weight_sum += clustering.weights[k];
    }
    if (std::abs(weight_sum - D) > 1e-9)
        throw ValidationError("build_model: cluster weights must sum to D");

    const bool with_tdpr = mode == PlanMode::kWithTdpr && pb.reserve.enabled;
    const int S = pb.scenario_set.num_scenarios;
    const int H = kHoursPerDay;
    const double lambda = pb.reserve.lambda;
    const double beta = pb.reserve.beta;

    double max_cost = 0.0;
    for (const auto& p : pb.dispatchables) max_cost = std::max(max_cost, p.var_cost);
    const double deficit_penalty = max_cost > 0 ? 10.0 * max_cost : 1000.0;

    MilpModel m;

    // sample weights: objective uses p_s * w_k (days represented), the TDPR
    // statistics use the probability p_s * w_k / D
    auto obj_weight = [&](int s, int k) {
        return pb.scenario_set.prob[s] * clustering.weights[k];
    };
    auto prob_weight = [&](int s, int k) { return obj_weight(s, k) / D; };

    // ---- investment columns
    for (const auto& p : pb.dispatchables) {
        const int col = m.add_column(var_name::invest_dispatchable(p.id), 0.0, 1.0,
                                     p.existing ? 0.0 : p.inv_cost,
                                     !p.existing && p.investable_binary);
        if (p.existing) m.fix_column(col, 1.0);
    }
    for (const auto& r : pb.vre_plants) {
        const int col = m.add_column(var_name::invest_vre(r.id), 0.0, 1.0,
                                     r.existing ? 0.0 : r.inv_cost,
                                     !r.existing && r.investable_binary);
        if (r.existing) m.fix_column(col, 1.0);
    }
    for (const auto& l : pb.lines) {
        if (l.existing) continue;
        m.add_column(var_name::invest_line(l.id), 0.0, 1.0, l.inv_cost, true);
    }

    // ---- operational columns
    for (int s = 0; s < S; ++s)
        for (int k = 0; k < K; ++k)
            for (int h = 0; h < H; ++h) {
                for (const auto& p : pb.dispatchables)
                    m.add_column(var_name::dispatch(p.id, s, k, h), 0.0, p.gmax,
                                 p.var_cost * obj_weight(s, k));
                for (const auto& r : pb.vre_plants)
                    m.add_column(var_name::vre_delivered(r.id, s, k, h), 0.0, kInf, 0.0);
                for (const auto& l : pb.lines)
                    m.add_column(var_name::flow(l.id, s, k, h), -l.fmax, l.fmax, 0.0);
                for (const auto& region : pb.regions)
                    m.add_column(var_name::deficit(region, s, k, h), 0.0, kInf,
                                 deficit_penalty * obj_weight(s, k));
                if (with_tdpr) {
                    for (const auto& p : pb.dispatchables)
                        m.add_column(var_name::reserve(p.id, s, k, h), 0.0, kInf, 0.0);
                    m.add_column(var_name::error(s, k, h), -kInf, kInf, 0.0);
                    m.add_column(var_name::variation(s, k, h), 0.0, kInf, 0.0);
                    m.add_column(var_name::cvar_excess(s, k, h), 0.0, kInf, 0.0);
                }
            }
    if (with_tdpr)
        for (int h = 0; h < H; ++h) {
            m.add_column(var_name::cvar_threshold(h), -kInf, kInf, 0.0);
            m.add_column(var_name::mean_variation(h), -kInf, kInf, 0.0);
            m.add_column(var_name::cvar_value(h), -kInf, kInf, 0.0);
            m.add_column(var_name::tdpr(h), 0.0, kInf, 0.0);
        }

    auto col = [&](const std::string& name) { return m.columns.at(name); };
    auto sdh_tag = [&](int s, int k, int h) {
        return "_s" + std::to_string(s + 1) + "d" + std::to_string(k + 1) + "h" +
               std::to_string(h + 1);
    };

    // ---- investment policy rows
    if (pb.investment.budget) {
        const int row = m.add_row("budget", RowSense::kLessEqual, *pb.investment.budget);
        for (const auto& p : pb.dispatchables)
            if (!p.existing)
                m.add_coeff(row, col(var_name::invest_dispatchable(p.id)), p.inv_cost);
        for (const auto& r : pb.vre_plants)
            if (!r.existing) m.add_coeff(row, col(var_name::invest_vre(r.id)), r.inv_cost);
        for (const auto& l : pb.lines)
            if (!l.existing) m.add_coeff(row, col(var_name::invest_line(l.id)), l.inv_cost);
    }
    if (pb.investment.capacity_margin) {
        double peak = 0.0;
        for (int d = 0; d < D; ++d)
            for (int h = 0; h < H; ++h) {
                double total = 0.0;
                for (std::size_t n = 0; n < pb.regions.size(); ++n)
                    total += pb.demand_at(n, d, h);
                peak = std::max(peak, total);
            }
        const int row = m.add_row("margin", RowSense::kGreaterEqual,
                                  (1.0 + *pb.investment.capacity_margin) * peak);
        for (const auto& p : pb.dispatchables)
            m.add_coeff(row, col(var_name::invest_dispatchable(p.id)), p.gmax);
        for (const auto& r : pb.vre_plants)
            m.add_coeff(row, col(var_name::invest_vre(r.id)), r.capacity);
    }

    // forecasts over the full scenario set; coupling uses uncurtailed profiles
    std::vector<ForecastProfile> forecasts;
    if (with_tdpr)
        for (const auto& r : pb.vre_plants)
            forecasts.push_back(hourly_forecast(pb.scenario_set, r.profile_ref));

    // ---- operational and reserve rows per sample
    for (int s = 0; s < S; ++s)
        for (int k = 0; k < K; ++k) {
            const int day = clustering.medoids[k];
            for (int h = 0; h < H; ++h) {
                // load balance per region
                for (std::size_t n = 0; n < pb.regions.size(); ++n) {
                    const auto& region = pb.regions[n];
                    const int row =
                        m.add_row("bal_" + region + sdh_tag(s, k, h), RowSense::kEqual,
                                  pb.demand_at(n, day, h));
                    for (const auto& p : pb.dispatchables)
                        if (p.region == region)
                            m.add_coeff(row, col(var_name::dispatch(p.id, s, k, h)), 1.0);
                    for (const auto& r : pb.vre_plants)
                        if (r.region == region)
                            m.add_coeff(row, col(var_name::vre_delivered(r.id, s, k, h)),
                                        1.0);
                    for (const auto& l : pb.lines) {
                        if (l.to_region == region)
                            m.add_coeff(row, col(var_name::flow(l.id, s, k, h)), 1.0);
                        if (l.from_region == region)
                            m.add_coeff(row, col(var_name::flow(l.id, s, k, h)), -1.0);
                    }
                    m.add_coeff(row, col(var_name::deficit(region, s, k, h)), 1.0);
                }

                // VRE delivery bounded by decided profile
                for (std::size_t ri = 0; ri < pb.vre_plants.size(); ++ri) {
                    const auto& r = pb.vre_plants[ri];
                    const std::size_t pi = pb.scenario_set.plant_index(r.profile_ref);
                    const double profile = pb.scenario_set.at(pi, s, day, h);
                    const int row = m.add_row("vcap_" + r.id + sdh_tag(s, k, h),
                                              RowSense::kLessEqual, 0.0);
                    m.add_coeff(row, col(var_name::vre_delivered(r.id, s, k, h)), 1.0);
                    m.add_coeff(row, col(var_name::invest_vre(r.id)), -profile);
                    if (!r.curtailable) {
                        const int eq = m.add_row("vfix_" + r.id + sdh_tag(s, k, h),
                                                 RowSense::kGreaterEqual, 0.0);
                        m.add_coeff(eq, col(var_name::vre_delivered(r.id, s, k, h)), 1.0);
                        m.add_coeff(eq, col(var_name::invest_vre(r.id)), -profile);
                    }
                }

                // ramping within the representative day (wrap at the boundary)
                for (const auto& p : pb.dispatchables) {
                    if (p.ramp <= 0.0 || p.ramp >= p.gmax) continue;  // 0 = unlimited
                    const int h2 = (h + 1) % H;
                    const int up = m.add_row("rampu_" + p.id + sdh_tag(s, k, h),
                                             RowSense::kLessEqual, p.ramp);
                    m.add_coeff(up, col(var_name::dispatch(p.id, s, k, h2)), 1.0);
                    m.add_coeff(up, col(var_name::dispatch(p.id, s, k, h)), -1.0);
                    const int dn = m.add_row("rampd_" + p.id + sdh_tag(s, k, h),
                                             RowSense::kLessEqual, p.ramp);
                    m.add_coeff(dn, col(var_name::dispatch(p.id, s, k, h)), 1.0);
                    m.add_coeff(dn, col(var_name::dispatch(p.id, s, k, h2)), -1.0);
                }

                // minimum stable level for must-run plants
                for (const auto& p : pb.dispatchables) {
                    if (!p.must_run || p.gmin_stable <= 0.0) continue;
                    const int row = m.add_row("mstab_" + p.id + sdh_tag(s, k, h),
                                              RowSense::kGreaterEqual, 0.0);
                    m.add_coeff(row, col(var_name::dispatch(p.id, s, k, h)), 1.0);
                    m.add_coeff(row, col(var_name::invest_dispatchable(p.id)),
                                -p.gmin_stable);
                }

                // candidate lines only carry flow when built
                for (const auto& l : pb.lines) {
                    if (l.existing) continue;
                    const int up = m.add_row("lcapu_" + l.id + sdh_tag(s, k, h),
                                             RowSense::kLessEqual, 0.0);
                    m.add_coeff(up, col(var_name::flow(l.id, s, k, h)), 1.0);
                    m.add_coeff(up, col(var_name::invest_line(l.id)), -l.fmax);
                    const int dn = m.add_row("lcapl_" + l.id + sdh_tag(s, k, h),
                                             RowSense::kGreaterEqual, 0.0);
                    m.add_coeff(dn, col(var_name::flow(l.id, s, k, h)), 1.0);
                    m.add_coeff(dn, col(var_name::invest_line(l.id)), l.fmax);
                }

                if (!with_tdpr) continue;

                // system forecast error as a linear function of VRE investment
                {
                    const int row = m.add_row("ddef" + sdh_tag(s, k, h), RowSense::kEqual,
                                              0.0);
                    m.add_coeff(row, col(var_name::error(s, k, h)), 1.0);
                    for (std::size_t ri = 0; ri < pb.vre_plants.size(); ++ri) {
                        const auto& r = pb.vre_plants[ri];
                        const std::size_t pi = pb.scenario_set.plant_index(r.profile_ref);
                        const double dev =
                            pb.scenario_set.at(pi, s, day, h) - forecasts[ri].values[h];
                        m.add_coeff(row, col(var_name::invest_vre(r.id)), -dev);
                    }
                }

                // |error variation| epigraph over the h -> h+1 transition
                {
                    const int h2 = (h + 1) % H;
                    const int up = m.add_row("absu" + sdh_tag(s, k, h),
                                             RowSense::kGreaterEqual, 0.0);
                    m.add_coeff(up, col(var_name::variation(s, k, h)), 1.0);
                    m.add_coeff(up, col(var_name::error(s, k, h)), -1.0);
                    m.add_coeff(up, col(var_name::error(s, k, h2)), 1.0);
                    const int dn = m.add_row("absl" + sdh_tag(s, k, h),
                                             RowSense::kGreaterEqual, 0.0);
                    m.add_coeff(dn, col(var_name::variation(s, k, h)), 1.0);
                    m.add_coeff(dn, col(var_name::error(s, k, h)), 1.0);
                    m.add_coeff(dn, col(var_name::error(s, k, h2)), -1.0);
                }

                // CVaR excess over the threshold
                {
                    const int row = m.add_row("om" + sdh_tag(s, k, h),
                                              RowSense::kGreaterEqual, 0.0);
                    m.add_coeff(row, col(var_name::cvar_excess(s, k, h)), 1.0);
                    m.add_coeff(row, col(var_name::cvar_threshold(h)), 1.0);
                    m.add_coeff(row, col(var_name::variation(s, k, h)), -1.0);
                }

                // reserve allocation and balance
                {
                    for (const auto& p : pb.dispatchables) {
                        const int row = m.add_row("alloc_" + p.id + sdh_tag(s, k, h),
                                                  RowSense::kLessEqual, 0.0);
                        m.add_coeff(row, col(var_name::dispatch(p.id, s, k, h)), 1.0);
                        m.add_coeff(row, col(var_name::reserve(p.id, s, k, h)), 1.0);
                        m.add_coeff(row, col(var_name::invest_dispatchable(p.id)),
                                    -p.gmax);
                    }
                    const int row =
                        m.add_row("rsv" + sdh_tag(s, k, h), RowSense::kGreaterEqual, 0.0);
                    for (const auto& p : pb.dispatchables)
                        m.add_coeff(row, col(var_name::reserve(p.id, s, k, h)), 1.0);
                    m.add_coeff(row, col(var_name::tdpr(h)), -1.0);
                }
            }
        }

    // ---- per-hour TDPR rows
    if (with_tdpr)
        for (int h = 0; h < H; ++h) {
            const int erow =
                m.add_row("edef_h" + std::to_string(h + 1), RowSense::kEqual, 0.0);
            m.add_coeff(erow, col(var_name::mean_variation(h)), 1.0);
            for (int s = 0; s < S; ++s)
                for (int k = 0; k < K; ++k)
                    m.add_coeff(erow, col(var_name::variation(s, k, h)), -prob_weight(s, k));

            const int crow =
                m.add_row("cdef_h" + std::to_string(h + 1), RowSense::kEqual, 0.0);
            m.add_coeff(crow, col(var_name::cvar_value(h)), 1.0);
            m.add_coeff(crow, col(var_name::cvar_threshold(h)), -1.0);
            for (int s = 0; s < S; ++s)
                for (int k = 0; k < K; ++k)
                    m.add_coeff(crow, col(var_name::cvar_excess(s, k, h)),
                                -prob_weight(s, k) / beta);

            const int trow =
                m.add_row("tdef_h" + std::to_string(h + 1), RowSense::kGreaterEqual, 0.0);
            m.add_coeff(trow, col(var_name::tdpr(h)), 1.0);
            m.add_coeff(trow, col(var_name::mean_variation(h)), -(1.0 - lambda));
            m.add_coeff(trow, col(var_name::cvar_value(h)), -lambda);
        }

    m.canonicalize();
    return m;
}

MilpModel fix_vre_investments(const MilpModel& model,
                              const std::map<std::string, double>& values) {
    MilpModel out = model;
    for (const auto& [plant, value] : values) {
        const auto c = out.columns.find(var_name::invest_vre(plant));
        if (!c) throw ValidationError("fix_vre_investments: unknown plant '" + plant + "'");
        if (value < model.lower[*c] - 1e-9 || value > model.upper[*c] + 1e-9)
            throw ValidationError("fix_vre_investments: value for '" + plant +
                                  "' outside bounds");
        out.fix_column(*c, value);
    }
    return out;
}

MilpModel fix_all_investments(const MilpModel& model, const Solution& from) {
    MilpModel out = model;
    for (int j = 0; j < model.num_cols(); ++j) {
        const std::string& name = model.columns.name(j);
        if (name.rfind("xp_", 0) == 0 || name.rfind("xr_", 0) == 0 ||
            name.rfind("xl_", 0) == 0)
            out.fix_column(j, from.values[j]);
    }
    return out;
}

Solution extract_solution(const MilpModel& model, const std::vector<double>& raw,
                          SolveStatus status, double feasibility_tol) {
    if (raw.size() != static_cast<std::size_t>(model.num_cols()))
        throw ValidationError("extract_solution: vector length " +
                              std::to_string(raw.size()) + " != column count " +
                              std::to_string(model.num_cols()));
    Solution sol;
    sol.status = status;
    sol.values = raw;

    double objective = 0.0;
    for (int j = 0; j < model.num_cols(); ++j) {
        const double term = model.objective[j] * raw[j];
        objective += term;
        const std::string& name = model.columns.name(j);
        if (name.rfind("xp_", 0) == 0 || name.rfind("xr_", 0) == 0 ||
            name.rfind("xl_", 0) == 0)
            sol.investment_cost += term;
        else if (name.rfind("def_", 0) == 0)
            sol.penalty_cost += term;
        else
            sol.operating_cost += term;
    }
    sol.objective = objective;

    const auto act = model.row_activities(raw);
    for (int i = 0; i < model.num_rows(); ++i) {
        const double tol = feasibility_tol * (1.0 + std::abs(model.rhs[i]));
        const double a = act[i];
        bool ok = true;
        switch (model.senses[i]) {
            case RowSense::kLessEqual: ok = a <= model.rhs[i] + tol; break;
            case RowSense::kGreaterEqual: ok = a >= model.rhs[i] - tol; break;
            case RowSense::kEqual: ok = std::abs(a - model.rhs[i]) <= tol; break;
        }
        if (!ok && sol.violation.empty()) {
            sol.status = SolveStatus::kInfeasible;
            sol.violation = "row '" + model.row_names[i] + "': activity " +
                            std::to_string(a) + " vs rhs " + std::to_string(model.rhs[i]);
        }
    }
    for (int j = 0; j < model.num_cols() && sol.violation.empty(); ++j) {
        const double tol = feasibility_tol * (1.0 + std::abs(raw[j]));
        if (raw[j] < model.lower[j] - tol || raw[j] > model.upper[j] + tol) {
            sol.status = SolveStatus::kInfeasible;
            sol.violation = "bounds of column '" + model.columns.name(j) + "'";
        }
    }
    return sol;
}

}  // namespace tdprplan

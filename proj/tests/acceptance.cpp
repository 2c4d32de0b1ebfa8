// Acceptance suite: one pass/fail line per criterion, exit code 0 only if
// every criterion holds.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "tdprplan/bnb.hpp"
#include "tdprplan/build.hpp"
#include "tdprplan/dayreduce.hpp"
#include "tdprplan/io.hpp"
#include "tdprplan/mps.hpp"
#include "tdprplan/report.hpp"
#include "tdprplan/simplex.hpp"
#include "tdprplan/tdpr.hpp"
#include "test_util.hpp"

using namespace tdprplan;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int criterion, const std::string& label, bool ok,
            const std::string& detail = "") {
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << criterion << ": " << label;
    if (!ok && !detail.empty()) std::cout << " (" << detail << ")";
    std::cout << std::endl;
    if (!ok) ++failures;
}

double cvar_ru_oracle(const std::vector<double>& x, const std::vector<double>& p,
                      double beta) {
    // Rockafellar-Uryasev: min_W W + (1/beta) sum p max(0, x - W); the optimum
    // sits at a sample breakpoint
    double best = std::numeric_limits<double>::infinity();
    for (double w : x) {
        double acc = w;
        for (std::size_t i = 0; i < x.size(); ++i)
            acc += p[i] * std::max(0.0, x[i] - w) / beta;
        best = std::min(best, acc);
    }
    return best;
}

// min sum_h TDPR_h with all VRE investments fixed: the optimum is the minimal
// feasible requirement, hour by hour
std::vector<double> minimal_tdpr_hours(const PlanningProblem& pb,
                                       const DayClustering& cl, double level) {
    auto m = build_model(pb, cl, PlanMode::kWithTdpr);
    std::fill(m.objective.begin(), m.objective.end(), 0.0);
    for (int h = 0; h < kHoursPerDay; ++h)
        m.objective[m.columns.at(var_name::tdpr(h))] = 1.0;
    for (const auto& r : pb.vre_plants)
        m.fix_column(m.columns.at(var_name::invest_vre(r.id)), level);
    const auto sol = solve_milp(m);
    if (sol.status != SolveStatus::kOptimal) return {};
    std::vector<double> out;
    for (int h = 0; h < kHoursPerDay; ++h)
        out.push_back(sol.value(m, var_name::tdpr(h)));
    return out;
}

double tdpr_total(const ScenarioSet& set, const std::vector<std::string>& plants,
                  const ReserveConfig& cfg) {
    const auto prof =
        compute_tdpr(set, plants, std::vector<double>(plants.size(), 1.0), cfg);
    double acc = 0.0;
    for (double v : prof.tdpr) acc += v;
    return acc;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    }
};

// ---- criterion 1: worked example, |delta(h1) - delta(h2)| = 500 exactly
void criterion1() {
    Timer timer;
    ErrorSamples err;
    err.num_scenarios = 1;
    err.num_days = 1;
    err.values.assign(kHoursPerDay, 0.0);
    err.at(0, 0, 0) = 200.0;
    err.at(0, 0, 1) = -300.0;
    const auto var = error_variation(err);
    const bool ok = var.at(0, 0, 0) == 500.0 && timer.seconds() < 1.0;
    report(1, "worked example |200 - (-300)| = 500 MW", ok);
}

// ---- criterion 2: CVaR vs Rockafellar-Uryasev breakpoint scan
void criterion2() {
    Timer timer;
    std::mt19937 rng(424242);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    bool ok = true;
    std::string detail;
    for (int trial = 0; trial < 100 && ok; ++trial) {
        const int n = 200;
        std::vector<double> x(n), p(n);
        double mass = 0.0;
        for (int i = 0; i < n; ++i) {
            x[i] = 1000.0 * u(rng) - 200.0;
            p[i] = 0.05 + u(rng);
            mass += p[i];
        }
        for (auto& v : p) v /= mass;
        for (double beta : {0.05, 0.1, 0.5, 1.0}) {
            const double got = cvar_empirical(x, p, beta);
            const double want = cvar_ru_oracle(x, p, beta);
            if (std::abs(got - want) > 1e-7) {
                ok = false;
                detail = "trial " + std::to_string(trial) + " beta " +
                         std::to_string(beta) + ": " + std::to_string(got) + " vs " +
                         std::to_string(want);
                break;
            }
        }
    }
    if (timer.seconds() >= 5.0) {
        ok = false;
        detail = "runtime " + std::to_string(timer.seconds()) + "s";
    }
    report(2, "cvar_empirical matches the RU oracle on 100x4 cases", ok, detail);
}

// ---- criterion 3: endogenous minimal TDPR = exogenous engine profile
void criterion3() {
    Timer timer;
    auto pb = testutil::make_problem(314, 3, 2, 2, 1);
    const auto cl = trivial_clustering(2);
    bool ok = true;
    std::string detail;
    for (double lambda : {0.0, 0.5, 1.0}) {
        pb.reserve.lambda = lambda;
        const auto hours = minimal_tdpr_hours(pb, cl, 1.0);
        if (hours.empty()) {
            ok = false;
            detail = "solve failed at lambda " + std::to_string(lambda);
            break;
        }
        std::vector<std::string> plants;
        for (const auto& r : pb.vre_plants) plants.push_back(r.profile_ref);
        const auto oracle = compute_tdpr(
            pb.scenario_set, plants, std::vector<double>(plants.size(), 1.0), pb.reserve);
        for (int h = 0; h < kHoursPerDay; ++h)
            if (std::abs(hours[h] - oracle.tdpr[h]) > 1e-6) {
                ok = false;
                detail = "lambda " + std::to_string(lambda) + " hour " +
                         std::to_string(h + 1) + ": " + std::to_string(hours[h]) +
                         " vs " + std::to_string(oracle.tdpr[h]);
                break;
            }
        if (!ok) break;
    }
    if (timer.seconds() >= 60.0) {
        ok = false;
        detail = "runtime " + std::to_string(timer.seconds()) + "s";
    }
    report(3, "endogenous TDPR equals the engine profile for lambda in {0,.5,1}", ok,
           detail);
}

// ---- criterion 4: portfolio effect and subadditivity
void criterion4() {
    bool ok = true;
    std::string detail;
    const ReserveConfig cfg{0.5, 0.2, true};

    // plant b mirrors plant a around the capacity midpoint -> errors cancel
    ScenarioSet set = testutil::make_scenarios(99, 4, 3, {"a", "b"}, 100.0, 20.0);
    for (int s = 0; s < set.num_scenarios; ++s)
        for (int d = 0; d < set.num_days; ++d)
            for (int h = 0; h < kHoursPerDay; ++h)
                set.at(1, s, d, h) = 100.0 - set.at(0, s, d, h);

    const double both = tdpr_total(set, {"a", "b"}, cfg);
    const double only_a = tdpr_total(set, {"a"}, cfg);
    const double only_b = tdpr_total(set, {"b"}, cfg);
    if (std::abs(both) > 1e-9) {
        ok = false;
        detail = "anti-correlated pair total " + std::to_string(both);
    }
    if (only_a <= 0.0 || only_b <= 0.0) {
        ok = false;
        detail = "single-plant TDPR not positive";
    }

    std::mt19937 seeds(17);
    for (int trial = 0; trial < 50 && ok; ++trial) {
        const auto rnd =
            testutil::make_scenarios(seeds(), 3, 2, {"a", "b"}, 100.0, 25.0);
        const double ab = tdpr_total(rnd, {"a", "b"}, cfg);
        const double a = tdpr_total(rnd, {"a"}, cfg);
        const double b = tdpr_total(rnd, {"b"}, cfg);
        if (ab > a + b + 1e-9) {
            ok = false;
            detail = "subadditivity broken on trial " + std::to_string(trial);
        }
    }
    report(4, "portfolio effect: cancellation and subadditivity", ok, detail);
}

// ---- criteria 5 and 7 share the seeded small-system suite; criterion 7 is
// reported later to keep the output in numeric order
bool ok7_result = true;
std::string detail7_result;

void criteria5and7() {
    bool ok5 = true, ok7 = true;
    std::string detail5, detail7;
    Timer total;
    for (unsigned seed = 1; seed <= 10 && (ok5 || ok7); ++seed) {
        const auto pb = testutil::make_problem(seed, 2, 2, 2, 2, seed % 2 == 0);
        const auto cl = trivial_clustering(2);
        const auto with_model = build_model(pb, cl, PlanMode::kWithTdpr);

        Timer t;
        const auto with = solve_milp(with_model);
        const auto without = solve_milp(build_model(pb, cl, PlanMode::kWithoutTdpr));
        if (t.seconds() >= 60.0 && ok5) {
            ok5 = false;
            detail5 = "seed " + std::to_string(seed) + " solve took " +
                      std::to_string(t.seconds()) + "s";
        }
        if (with.status != SolveStatus::kOptimal ||
            without.status != SolveStatus::kOptimal) {
            ok5 = ok7 = false;
            detail5 = detail7 = "seed " + std::to_string(seed) + " not optimal";
            break;
        }
        const double scale = 1.0 + std::abs(without.objective);
        if (with.objective < without.objective - 1e-6 * scale && ok5) {
            ok5 = false;
            detail5 = "seed " + std::to_string(seed) + ": with < without";
        }

        // hierarchical: pin stage-1 VRE choices into the with-tdpr model
        const auto base = build_model(pb, cl, PlanMode::kWithoutTdpr);
        std::map<std::string, double> stage1;
        for (const auto& r : pb.vre_plants)
            if (!r.existing)
                stage1[r.id] = without.value(base, var_name::invest_vre(r.id));
        const auto hier = solve_milp(fix_vre_investments(with_model, stage1));
        if (hier.status == SolveStatus::kOptimal && ok5 &&
            with.objective > hier.objective + 1e-6 * scale) {
            ok5 = false;
            detail5 = "seed " + std::to_string(seed) + ": co-optimized > hierarchical";
        }

        // criterion 7: pin every Delta to the exact |delta_h - delta_h+1| of the
        // decided plan and re-solve
        if (ok7) {
            auto pinned = fix_all_investments(with_model, with);
            const int S = pb.scenario_set.num_scenarios;
            const int K = static_cast<int>(cl.medoids.size());
            for (int s = 0; s < S; ++s)
                for (int k = 0; k < K; ++k)
                    for (int h = 0; h < kHoursPerDay; ++h) {
                        const int h2 = (h + 1) % kHoursPerDay;
                        const double diff =
                            std::abs(with.value(with_model, var_name::error(s, k, h)) -
                                     with.value(with_model, var_name::error(s, k, h2)));
                        pinned.fix_column(
                            pinned.columns.at(var_name::variation(s, k, h)), diff);
                    }
            const auto resolved = solve_milp(pinned);
            const double rel = std::abs(resolved.objective - with.objective) /
                               (1.0 + std::abs(with.objective));
            if (resolved.status != SolveStatus::kOptimal || rel >= 1e-6) {
                ok7 = false;
                detail7 = "seed " + std::to_string(seed) + " rel change " +
                          std::to_string(rel);
            }
        }
    }
    report(5, "restriction monotonicity on 10 seeded systems", ok5, detail5);
    ok7_result = ok7;
    detail7_result = detail7;
}

// ---- criterion 6: solver oracles
void criterion6() {
    bool ok = true;
    std::string detail;

    // knapsacks with <= 10 binaries vs exhaustive enumeration
    std::mt19937 rng(606);
    std::uniform_real_distribution<double> u(1.0, 10.0);
    std::uniform_int_distribution<int> nsize(4, 10);
    for (int trial = 0; trial < 25 && ok; ++trial) {
        const int n = nsize(rng);
        std::vector<double> value(n), weight(n);
        for (int i = 0; i < n; ++i) {
            value[i] = u(rng);
            weight[i] = u(rng);
        }
        const double cap = 0.45 * std::accumulate(weight.begin(), weight.end(), 0.0);
        MilpModel m;
        for (int i = 0; i < n; ++i)
            m.add_column("x" + std::to_string(i), 0.0, 1.0, -value[i], true);
        const int row = m.add_row("cap", RowSense::kLessEqual, cap);
        for (int i = 0; i < n; ++i) m.add_coeff(row, i, weight[i]);
        m.canonicalize();
        const auto sol = solve_milp(m);

        double best = 0.0;
        for (int mask = 0; mask < (1 << n); ++mask) {
            double v = 0.0, w = 0.0;
            for (int i = 0; i < n; ++i)
                if (mask & (1 << i)) {
                    v += value[i];
                    w += weight[i];
                }
            if (w <= cap) best = std::max(best, v);
        }
        if (sol.status != SolveStatus::kOptimal || std::abs(-sol.objective - best) > 1e-9) {
            ok = false;
            detail = "knapsack trial " + std::to_string(trial);
        }
    }

    // random LPs vs the dense tableau oracle
    std::uniform_real_distribution<double> r(-1.0, 1.0);
    std::uniform_int_distribution<int> msize(5, 30), cols(5, 45);
    for (int trial = 0; trial < 50 && ok; ++trial) {
        const int m = msize(rng), n = cols(rng);
        std::vector<std::vector<double>> A(m, std::vector<double>(n));
        std::vector<double> b(m), c(n);
        for (auto& row : A)
            for (auto& v : row) v = r(rng);
        for (auto& v : b) v = 1.0 + std::abs(r(rng)) * 4.0;
        for (auto& v : c) v = r(rng);
        A.push_back(std::vector<double>(n, 1.0));
        b.push_back(40.0);

        // dense tableau oracle (Bland's rule)
        const int rows = m + 1;
        std::vector<std::vector<double>> t(rows + 1,
                                           std::vector<double>(n + rows + 1, 0.0));
        for (int i = 0; i < rows; ++i) {
            for (int j = 0; j < n; ++j) t[i][j] = A[i][j];
            t[i][n + i] = 1.0;
            t[i][n + rows] = b[i];
        }
        for (int j = 0; j < n; ++j) t[rows][j] = c[j];
        double oracle = 0.0;
        bool oracle_ok = false;
        for (long iter = 0; iter < 100000; ++iter) {
            int enter = -1;
            for (int j = 0; j < n + rows; ++j)
                if (t[rows][j] < -1e-9) {
                    enter = j;
                    break;
                }
            if (enter < 0) {
                oracle = -t[rows][n + rows];
                oracle_ok = true;
                break;
            }
            int leave = -1;
            double best = std::numeric_limits<double>::infinity();
            for (int i = 0; i < rows; ++i) {
                if (t[i][enter] <= 1e-9) continue;
                const double ratio = t[i][n + rows] / t[i][enter];
                if (ratio < best - 1e-12) {
                    best = ratio;
                    leave = i;
                }
            }
            if (leave < 0) break;
            const double piv = t[leave][enter];
            for (auto& v : t[leave]) v /= piv;
            for (int i = 0; i <= rows; ++i) {
                if (i == leave || t[i][enter] == 0.0) continue;
                const double f = t[i][enter];
                for (int j = 0; j <= n + rows; ++j) t[i][j] -= f * t[leave][j];
            }
        }

        MilpModel lp;
        for (int j = 0; j < n; ++j)
            lp.add_column("x" + std::to_string(j), 0.0, kInf, c[j]);
        for (std::size_t i = 0; i < A.size(); ++i) {
            const int row = lp.add_row("r" + std::to_string(i), RowSense::kLessEqual,
                                       b[i]);
            for (int j = 0; j < n; ++j) lp.add_coeff(row, j, A[i][j]);
        }
        lp.canonicalize();
        const auto res = solve_lp(lp);
        if (!oracle_ok || res.status != SolveStatus::kOptimal ||
            std::abs(res.objective - oracle) > 1e-7 * (1.0 + std::abs(oracle))) {
            ok = false;
            detail = "LP trial " + std::to_string(trial);
        }
    }
    report(6, "MILP = enumeration (25x) and LP = tableau oracle (50x)", ok, detail);
}

// ---- criterion 8: MPS round trip and golden file
void criterion8() {
    bool ok = true;
    std::string detail;

    MilpModel m;
    m.add_column("x", 0.0, kInf, 1.5);
    m.add_column("y", 0.0, 1.0, -2.0, true);
    m.add_column("z", -kInf, kInf, 0.0);
    const int c1 = m.add_row("c1", RowSense::kLessEqual, 10.0);
    const int c2 = m.add_row("c2", RowSense::kGreaterEqual, -1.0);
    const int c3 = m.add_row("c3", RowSense::kEqual, 4.0);
    m.add_coeff(c1, 0, 1.0);
    m.add_coeff(c1, 1, 2.0);
    m.add_coeff(c2, 0, 1.0);
    m.add_coeff(c2, 1, -1.0);
    m.add_coeff(c3, 0, 0.25);
    m.add_coeff(c3, 2, 1.0);
    m.canonicalize();

    const fs::path out = fs::temp_directory_path() / "tdprplan_accept.mps";
    write_mps(m, out.string());
    if (slurp(out) != slurp(fs::path(TEST_DATA_DIR) / "golden_small.mps")) {
        ok = false;
        detail = "golden bytes differ";
    }
    const auto back = read_mps(out.string());
    if (back.triplets != m.triplets || back.rhs != m.rhs ||
        back.objective != m.objective || back.lower != m.lower ||
        back.upper != m.upper) {
        ok = false;
        detail = "re-parse differs";
    }

    // a full planning model also survives the round trip
    const auto pb = testutil::make_problem(3, 2, 2, 1, 1);
    const auto plan = build_model(pb, trivial_clustering(2), PlanMode::kWithTdpr);
    write_mps(plan, out.string());
    const auto plan_back = read_mps(out.string());
    if (plan_back.triplets != plan.triplets || plan_back.rhs != plan.rhs) {
        ok = false;
        detail = "planning model round trip differs";
    }
    report(8, "MPS golden bytes and independent re-parse", ok, detail);
}

// ---- criterion 9: byte-identical CLI reruns
void criterion9() {
    bool ok = true;
    std::string detail;

    const fs::path work = fs::temp_directory_path() / "tdprplan_accept_cli";
    fs::remove_all(work);
    fs::create_directories(work);
    const auto pb = testutil::make_problem(77, 2, 2, 1, 1);
    save_problem(pb, work.string());

    auto run = [&](const std::string& out) {
        const std::string cmd = std::string(CLI_BINARY) + " plan solve --mode with-tdpr" +
                                " --config " + (work / "config.json").string() +
                                " --scenarios " + (work / "scenarios.csv").string() +
                                " --seed 7 --out " + out + " > " + out + ".log 2>&1";
        return std::system(cmd.c_str());
    };
    const std::string out1 = (work / "run1").string();
    const std::string out2 = (work / "run2").string();
    if (run(out1) != 0 || run(out2) != 0) {
        ok = false;
        detail = "CLI run failed; see " + out1 + ".log";
    }
    if (ok) {
        for (const auto& entry : fs::directory_iterator(out1)) {
            const auto name = entry.path().filename();
            if (slurp(entry.path()) != slurp(fs::path(out2) / name)) {
                ok = false;
                detail = name.string() + " differs between runs";
                break;
            }
        }
    }
    report(9, "CLI reruns with a fixed seed are byte-identical", ok, detail);
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criteria5and7();
    criterion6();
    report(7, "abs-linearization is tight on the criterion-5 suite", ok7_result,
           detail7_result);
    criterion8();
    criterion9();
    std::cout << (failures == 0 ? "ALL CRITERIA PASS" : "FAILURES: ")
              << (failures == 0 ? std::string() : std::to_string(failures)) << std::endl;
    return failures == 0 ? 0 : 1;
}

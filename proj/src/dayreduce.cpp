#include "tdprplan/dayreduce.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "tdprplan/tdpr.hpp"

namespace tdprplan {

std::vector<DayFeature> extract_day_features(const PlanningProblem& pb) {
    const auto& set = pb.scenario_set;
    const int D = set.num_days;
    const std::size_t R = pb.regions.size();
    const std::size_t dims = (R + 1) * kHoursPerDay;

    // expected VRE per (region, day, hour), probability-weighted over scenarios
    std::vector<double> evre(R * static_cast<std::size_t>(D) * kHoursPerDay, 0.0);
    std::vector<double> total(static_cast<std::size_t>(D) * kHoursPerDay, 0.0);
    for (const auto& r : pb.vre_plants) {
        const std::size_t pi = set.plant_index(r.profile_ref);
        const std::size_t n = pb.region_index(r.region);
        for (int d = 0; d < D; ++d)
            for (int h = 0; h < kHoursPerDay; ++h) {
                double e = 0.0;
                for (int s = 0; s < set.num_scenarios; ++s)
                    e += set.prob[s] * set.at(pi, s, d, h);
                evre[(n * D + d) * kHoursPerDay + h] += e;
                total[static_cast<std::size_t>(d) * kHoursPerDay + h] += e;
            }
    }

    std::vector<DayFeature> feats(static_cast<std::size_t>(D));
    for (int d = 0; d < D; ++d) {
        feats[d].day = d;
        feats[d].vector.resize(dims);
        std::size_t k = 0;
        for (std::size_t n = 0; n < R; ++n)
            for (int h = 0; h < kHoursPerDay; ++h, ++k)
                feats[d].vector[k] =
                    pb.demand_at(n, d, h) - evre[(n * D + d) * kHoursPerDay + h];
        for (int h = 0; h < kHoursPerDay; ++h, ++k)
            feats[d].vector[k] = total[static_cast<std::size_t>(d) * kHoursPerDay + h];
    }

    // per-dimension min-max normalization; constant dimensions map to 0
    for (std::size_t k = 0; k < dims; ++k) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        for (const auto& f : feats) {
            lo = std::min(lo, f.vector[k]);
            hi = std::max(hi, f.vector[k]);
        }
        const double span = hi - lo;
        for (auto& f : feats)
            f.vector[k] = span > 0.0 ? (f.vector[k] - lo) / span : 0.0;
    }
    return feats;
}

namespace {

double sq_dist(const DayFeature& a, const DayFeature& b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.vector.size(); ++i) {
        const double d = a.vector[i] - b.vector[i];
        acc += d * d;
    }
    return acc;
}

struct PamResult {
    std::vector<int> medoids;
    double cost = 0.0;
};

PamResult pam(const std::vector<std::vector<double>>& dist, int n, int k,
              const std::vector<int>* init) {
    std::vector<int> medoids;
    if (init) {
        medoids = *init;
    } else {
        // BUILD: greedy, lowest index on ties
        std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
        for (int m = 0; m < k; ++m) {
            int best = -1;
            double best_gain = -std::numeric_limits<double>::infinity();
            for (int c = 0; c < n; ++c) {
                if (std::find(medoids.begin(), medoids.end(), c) != medoids.end())
                    continue;
                double gain = 0.0;
                for (int i = 0; i < n; ++i)
                    gain += std::max(0.0, std::min(nearest[i], 1e300) - dist[i][c]);
                if (m == 0) {
                    gain = 0.0;
                    for (int i = 0; i < n; ++i) gain -= dist[i][c];
                }
                if (gain > best_gain + 1e-12) {
                    best_gain = gain;
                    best = c;
                }
            }
            medoids.push_back(best);
            for (int i = 0; i < n; ++i) nearest[i] = std::min(nearest[i], dist[i][best]);
        }
    }
    std::sort(medoids.begin(), medoids.end());

    auto total_cost = [&](const std::vector<int>& med) {
        double c = 0.0;
        for (int i = 0; i < n; ++i) {
            double best = std::numeric_limits<double>::infinity();
            for (int m : med) best = std::min(best, dist[i][m]);
            c += best;
        }
        return c;
    };

    double cost = total_cost(medoids);
    // swap phase: first improving swap scanned in deterministic order
    bool improved = true;
    while (improved) {
        improved = false;
        for (std::size_t mi = 0; mi < medoids.size() && !improved; ++mi) {
            for (int c = 0; c < n && !improved; ++c) {
                if (std::find(medoids.begin(), medoids.end(), c) != medoids.end())
                    continue;
                std::vector<int> trial = medoids;
                trial[mi] = c;
                std::sort(trial.begin(), trial.end());
                const double tc = total_cost(trial);
                if (tc < cost - 1e-12) {
                    medoids = trial;
                    cost = tc;
                    improved = true;
                }
            }
        }
    }
    return {medoids, cost};
}

}  // namespace

double clustering_cost(const std::vector<DayFeature>& features,
                       const std::vector<int>& medoids) {
    double c = 0.0;
    for (const auto& f : features) {
        double best = std::numeric_limits<double>::infinity();
        for (int m : medoids) best = std::min(best, sq_dist(f, features[m]));
        c += best;
    }
    return c;
}

DayClustering trivial_clustering(int num_days) {
    DayClustering cl;
    cl.medoids.resize(num_days);
    std::iota(cl.medoids.begin(), cl.medoids.end(), 0);
    cl.weights.assign(num_days, 1.0);
    cl.assignment = cl.medoids;
    return cl;
}

DayClustering cluster_days(const std::vector<DayFeature>& features, int k, int seed,
                           int restarts) {
    const int n = static_cast<int>(features.size());
    if (k < 1) throw ValidationError("cluster_days: K must be >= 1");
    if (k > n) throw ValidationError("cluster_days: K exceeds number of days");
    if (k == n) return trivial_clustering(n);

    std::vector<std::vector<double>> dist(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            dist[i][j] = dist[j][i] = sq_dist(features[i], features[j]);

    PamResult best = pam(dist, n, k, nullptr);
    std::mt19937 rng(static_cast<unsigned>(seed));
    for (int r = 0; r < restarts; ++r) {
        std::vector<int> init(n);
        std::iota(init.begin(), init.end(), 0);
        std::shuffle(init.begin(), init.end(), rng);
        init.resize(k);
        PamResult trial = pam(dist, n, k, &init);
        if (trial.cost < best.cost - 1e-12) best = trial;
    }

    DayClustering cl;
    cl.medoids = best.medoids;
    cl.weights.assign(best.medoids.size(), 0.0);
    cl.assignment.resize(n);
    for (int i = 0; i < n; ++i) {
        int arg = 0;
        double bd = std::numeric_limits<double>::infinity();
        for (std::size_t m = 0; m < cl.medoids.size(); ++m) {
            const double dd = dist[i][cl.medoids[m]];
            if (dd < bd - 1e-15 ||
                (std::abs(dd - bd) <= 1e-15 && cl.medoids[m] < cl.medoids[arg])) {
                bd = dd;
                arg = static_cast<int>(m);
            }
        }
        cl.assignment[i] = arg;
    }
    // each medoid sits in its own cluster even when days are duplicates
    for (std::size_t m = 0; m < cl.medoids.size(); ++m)
        cl.assignment[cl.medoids[m]] = static_cast<int>(m);
    for (int i = 0; i < n; ++i) cl.weights[cl.assignment[i]] += 1.0;
    return cl;
}

}  // namespace tdprplan

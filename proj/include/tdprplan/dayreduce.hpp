#pragma once

#include <vector>

#include "tdprplan/types.hpp"

namespace tdprplan {

/// One feature vector per day: per-region hourly net load (demand minus
/// expected VRE) concatenated with the total expected VRE curve, each
/// dimension min-max normalized across days.
struct DayFeature {
    int day = 0;
    std::vector<double> vector;
};

/// K-medoids result. Weights are cluster sizes and sum to D.
struct DayClustering {
    std::vector<int> medoids;     // day indices, 0-based
    std::vector<double> weights;  // per medoid
    std::vector<int> assignment;  // day -> cluster index
};

std::vector<DayFeature> extract_day_features(const PlanningProblem& problem);

/// PAM (BUILD + swap) under squared Euclidean distance. Deterministic:
/// ties break toward the lowest day index; `restarts` random restarts keep
/// the best objective (0 = plain deterministic PAM).
DayClustering cluster_days(const std::vector<DayFeature>& features, int k, int seed = 0,
                           int restarts = 0);

/// Total within-cluster cost of an explicit medoid set (each day assigned to
/// its nearest medoid, squared Euclidean).
double clustering_cost(const std::vector<DayFeature>& features,
                       const std::vector<int>& medoids);

/// Identity clustering: every day its own medoid, weight 1.
DayClustering trivial_clustering(int num_days);

}  // namespace tdprplan

#pragma once

#include "minv/core.hpp"
#include "minv/lp.hpp"
#include "minv/pricing.hpp"

namespace minv {

struct ColGenParams {
    double subset_time_budget_s = 600.0;
    double binary_time_budget_s = 60.0;
    long pricing_node_cap = kDefaultPricingNodeCap;
    long max_iterations = 1'000'000;
    bool diversify_seeds = true;  // add size-m subclusters of oversized seeds
};

struct ColGenResult {
    Clustering clustering;  // global indices
    double lp_bound = 0.0;
    long columns_generated = 0;
    long iterations = 0;
    double wall_time_s = 0.0;
    bool lp_optimal = false;
    bool rounding_optimal = false;

    std::vector<int> points;             // the subset, ascending
    std::vector<double> final_duals;     // aligned with `points`
    std::vector<double> rmp_objectives;  // one per RMP solve
};

/// Column generation on one subset: seed the master with the initial
/// clustering restricted to the subset, alternate RMP solves with exact
/// pricing, then round by re-solving the master with binary bounds. The
/// returned clustering is never worse than the seed.
ColGenResult solve_subset(const std::vector<int>& points, const Dataset& ds, int m,
                          const std::vector<Cluster>& seed_clusters, const ColGenParams& params);

}  // namespace minv

#pragma once

#include <optional>
#include <span>

#include "minv/core.hpp"

namespace minv {

/// Immutable per-subset state for the pricing subproblem: the subset's
/// points, their colors, and the pairwise squared-distance cache. Only
/// pairs of distinct colors are admissible inside one cluster.
class PricingInstance {
public:
    PricingInstance(std::vector<int> points, const Dataset& ds, int m);

    int m() const { return m_; }
    int size() const { return static_cast<int>(points_.size()); }
    const std::vector<int>& points() const { return points_; }
    int color(int local) const { return colors_[static_cast<std::size_t>(local)]; }
    int num_colors() const { return num_colors_; }
    double dist(int a, int b) const {
        return dist_[static_cast<std::size_t>(a) * points_.size() + static_cast<std::size_t>(b)];
    }

private:
    std::vector<int> points_;  // global indices, ascending
    std::vector<int> colors_;
    std::vector<double> dist_;
    int m_ = 0;
    int num_colors_ = 0;
};

struct PricedColumn {
    Cluster cluster;  // local indices into the instance's point list
    double reduced_cost = 0.0;
};

struct PricingOutcome {
    std::optional<PricedColumn> column;
    bool exact = true;  // false when the node cap truncated some search
    long nodes = 0;
};

constexpr long kDefaultPricingNodeCap = 5'000'000;

/// Minimum of w_C - sum of duals over feasible clusters of exactly
/// `eta` points. Depth-first search over candidates sorted by descending
/// dual value; a partial cluster is pruned when its pair cost minus the
/// best remaining dual mass cannot beat the incumbent. Returns nullopt
/// when no feasible cluster of this size exists. `use_pruning` exists for
/// the pruning-soundness tests.
PricingOutcome min_reduced_cost_cluster(const PricingInstance& inst, std::span<const double> duals,
                                        int eta, long node_cap = kDefaultPricingNodeCap,
                                        bool use_pruning = true);

/// Best priced column over all sizes in {m, ..., 2m-1}. The column is
/// empty when every size prices out at reduced cost >= -1e-7, which is
/// the LP optimality certificate whenever `exact` is true.
PricingOutcome price_all_sizes(const PricingInstance& inst, std::span<const double> duals,
                               long node_cap = kDefaultPricingNodeCap);

constexpr double kNegativeReducedCost = -1e-7;

}  // namespace minv

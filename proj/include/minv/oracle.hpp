#pragma once

#include "minv/core.hpp"

namespace minv {

/// Outcome of exhaustive enumeration over all feasible clusterings.
struct OracleResult {
    bool feasible = false;
    Clustering clustering;
    double sse = 0.0;
    long partitions_enumerated = 0;
};

/// Ground-truth optimum by recursive enumeration of every feasible
/// partition (size window, pairwise-distinct colors). The smallest
/// unassigned index anchors each new cluster, so each partition is
/// visited exactly once. Refuses datasets larger than `cap`.
OracleResult brute_force_optimal(const Dataset& ds, int m, int cap = 12);

}  // namespace minv

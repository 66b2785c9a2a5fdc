#pragma once

#include <functional>
#include <map>
#include <span>

#include "minv/core.hpp"

namespace minv {

/// Staging structure carrying points toward cluster formation: a set of
/// color codes plus, per color, the point indices holding that color.
/// Balanced means all rows have equal length.
struct Bucket {
    std::vector<int> signature;            // sorted color codes
    std::map<int, std::vector<int>> rows;  // color -> ascending point indices

    bool balanced() const;
    int row_length() const;  // common row length; -1 when unbalanced
};

/// Split the given points into balanced buckets. Signatures use the m
/// currently most frequent colors and grow (up to 2m-1) only when a
/// smaller signature would strand the residue. A bucket drains rows while
/// the residue stays constructible. Throws InfeasibilityError, naming the
/// stranded colors, exactly when the residue admits no feasible clustering.
std::vector<Bucket> assign_buckets(const std::vector<int>& points, const Dataset& ds, int m);

/// Split a balanced bucket into row_length() clusters, one point per
/// signature color each: seed every group with the unassigned point
/// farthest from the bucket centroid, then attach per remaining color the
/// nearest unassigned point.
std::vector<Cluster> partition_bucket(const Bucket& b, const Dataset& ds, int m);

/// Greedy bucketization end to end: assign_buckets on all points, then
/// partition every bucket. Deterministic; ties broken by smallest index.
Clustering initial_clustering(const Dataset& ds, int m);

/// Shared balanced-rows partitioner (also used by the dynamic republisher).
/// rows[k] holds item handles of key k, all rows the same length r; coords
/// maps a handle to its QI vector. Returns r groups, one item per row each.
std::vector<std::vector<int>> partition_balanced_rows(
    const std::vector<std::vector<int>>& rows,
    const std::function<std::span<const double>(int)>& coords, int dim);

}  // namespace minv

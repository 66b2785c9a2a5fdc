#pragma once

#include <span>
#include <string>
#include <vector>

#include "minv/errors.hpp"

namespace minv {

/// One microdata tuple: a numeric quasi-identifier vector plus an integer
/// color code for the sensitive value.
struct PointRecord {
    std::string id;
    std::vector<double> qis;
    int color = 0;
};

/// Immutable collection of points sharing one color dictionary.
class Dataset {
public:
    Dataset() = default;
    Dataset(std::vector<PointRecord> points, std::vector<std::string> color_names,
            bool standardized = false);

    int size() const { return static_cast<int>(points_.size()); }
    int dim() const { return d_; }
    int num_colors() const { return static_cast<int>(color_names_.size()); }
    bool standardized() const { return standardized_; }

    const PointRecord& point(int i) const { return points_[static_cast<std::size_t>(i)]; }
    const std::vector<PointRecord>& points() const { return points_; }
    std::span<const double> qi(int i) const { return points_[static_cast<std::size_t>(i)].qis; }
    int color(int i) const { return points_[static_cast<std::size_t>(i)].color; }
    const std::string& color_name(int code) const { return color_names_[static_cast<std::size_t>(code)]; }
    const std::vector<std::string>& color_names() const { return color_names_; }

    /// Index of the point with the given id, or -1.
    int index_of(const std::string& id) const;

private:
    std::vector<PointRecord> points_;
    std::vector<std::string> color_names_;
    int d_ = 0;
    bool standardized_ = false;
};

/// A cluster is a strictly increasing list of point indices.
struct Cluster {
    std::vector<int> members;
};

/// A clustering is a list of clusters; operations that require a partition
/// of the dataset validate that property explicitly.
struct Clustering {
    std::vector<Cluster> clusters;
};

double squared_distance(std::span<const double> a, std::span<const double> b);
double squared_distance(const PointRecord& a, const PointRecord& b);

std::vector<double> centroid(const Cluster& c, const Dataset& ds);

/// Pairwise-distance form of the cluster cost; equal to cluster_sse.
double cluster_weight(const Cluster& c, const Dataset& ds);

/// Spread of a cluster about its centroid.
double cluster_sse(const Cluster& c, const Dataset& ds);

/// Sum of cluster_sse over a partition of the dataset.
double total_sse(const Clustering& k, const Dataset& ds);

/// Total sum of squared errors about the global centroid.
double sst(const Dataset& ds);

/// 100 * SSE / SST. Throws when SST == 0 (all points identical).
double information_loss(const Clustering& k, const Dataset& ds);

bool is_partition(const Clustering& k, int p);

/// Size window m <= |C| <= 2m-1 and pairwise-distinct member colors.
bool is_feasible_cluster(const Cluster& c, const Dataset& ds, int m);

/// Partition of all points where every cluster is feasible.
bool is_feasible_clustering(const Clustering& k, const Dataset& ds, int m);

}  // namespace minv

#include "minv/core.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "minv/kernels.hpp"

namespace minv {

Dataset::Dataset(std::vector<PointRecord> points, std::vector<std::string> color_names,
                 bool standardized)
    : points_(std::move(points)), color_names_(std::move(color_names)), standardized_(standardized) {
    if (points_.empty()) throw InvalidInputError("dataset must contain at least one point");
    d_ = static_cast<int>(points_.front().qis.size());
    std::unordered_set<std::string> seen;
    for (const auto& pt : points_) {
        if (static_cast<int>(pt.qis.size()) != d_)
            throw InvalidInputError("point '" + pt.id + "' has dimension " +
                                    std::to_string(pt.qis.size()) + ", expected " + std::to_string(d_));
        if (pt.color < 0 || pt.color >= static_cast<int>(color_names_.size()))
            throw InvalidInputError("point '" + pt.id + "' has color code outside the dictionary");
        if (!seen.insert(pt.id).second)
            throw InvalidInputError("duplicate point id '" + pt.id + "'");
    }
}

int Dataset::index_of(const std::string& id) const {
    for (int i = 0; i < size(); ++i)
        if (points_[static_cast<std::size_t>(i)].id == id) return i;
    return -1;
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size())
        throw InvalidInputError("squared_distance: dimension mismatch (" + std::to_string(a.size()) +
                                " vs " + std::to_string(b.size()) + ")");
    return kernels::sq_dist(a.data(), b.data(), a.size());
}

double squared_distance(const PointRecord& a, const PointRecord& b) {
    return squared_distance(std::span<const double>(a.qis), std::span<const double>(b.qis));
}

std::vector<double> centroid(const Cluster& c, const Dataset& ds) {
    if (c.members.empty()) throw InvalidInputError("centroid of an empty cluster");
    std::vector<double> mean(static_cast<std::size_t>(ds.dim()), 0.0);
    for (int i : c.members) {
        auto q = ds.qi(i);
        kernels::axpy(mean.data(), 1.0, q.data(), mean.size());
    }
    const double inv = 1.0 / static_cast<double>(c.members.size());
    for (double& v : mean) v *= inv;
    return mean;
}

double cluster_weight(const Cluster& c, const Dataset& ds) {
    const std::size_t n = c.members.size();
    if (n == 0) throw InvalidInputError("cluster_weight of an empty cluster");
    double pair_sum = 0.0;
    for (std::size_t a = 0; a + 1 < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
            pair_sum += squared_distance(ds.qi(c.members[a]), ds.qi(c.members[b]));
    // (1/(2|C|)) * sum over ordered pairs == pair_sum / |C|
    return pair_sum / static_cast<double>(n);
}

double cluster_sse(const Cluster& c, const Dataset& ds) {
    if (c.members.empty()) throw InvalidInputError("cluster_sse of an empty cluster");
    const std::vector<double> mean = centroid(c, ds);
    double sse = 0.0;
    for (int i : c.members) {
        auto q = ds.qi(i);
        sse += kernels::sq_dist(q.data(), mean.data(), mean.size());
    }
    return sse;
}

bool is_partition(const Clustering& k, int p) {
    std::vector<char> seen(static_cast<std::size_t>(p), 0);
    int covered = 0;
    for (const auto& c : k.clusters) {
        for (int i : c.members) {
            if (i < 0 || i >= p) return false;
            if (seen[static_cast<std::size_t>(i)]) return false;
            seen[static_cast<std::size_t>(i)] = 1;
            ++covered;
        }
    }
    return covered == p;
}

double total_sse(const Clustering& k, const Dataset& ds) {
    if (!is_partition(k, ds.size()))
        throw InvalidInputError("total_sse: clustering is not a partition of the dataset");
    double sse = 0.0;
    for (const auto& c : k.clusters) sse += cluster_sse(c, ds);
    return sse;
}

double sst(const Dataset& ds) {
    Cluster all;
    all.members.resize(static_cast<std::size_t>(ds.size()));
    for (int i = 0; i < ds.size(); ++i) all.members[static_cast<std::size_t>(i)] = i;
    return cluster_sse(all, ds);
}

double information_loss(const Clustering& k, const Dataset& ds) {
    const double total = sst(ds);
    if (total <= 0.0)
        throw InvalidInputError("information_loss: degenerate dataset (SST is zero)");
    return 100.0 * total_sse(k, ds) / total;
}

bool is_feasible_cluster(const Cluster& c, const Dataset& ds, int m) {
    const int n = static_cast<int>(c.members.size());
    if (n < m || n > 2 * m - 1) return false;
    std::unordered_set<int> colors;
    int prev = -1;
    for (int i : c.members) {
        if (i < 0 || i >= ds.size() || i <= prev) return false;
        prev = i;
        if (!colors.insert(ds.color(i)).second) return false;
    }
    return true;
}

bool is_feasible_clustering(const Clustering& k, const Dataset& ds, int m) {
    if (!is_partition(k, ds.size())) return false;
    return std::all_of(k.clusters.begin(), k.clusters.end(),
                       [&](const Cluster& c) { return is_feasible_cluster(c, ds, m); });
}

}  // namespace minv

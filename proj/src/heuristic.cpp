#include "minv/heuristic.hpp"

#include <algorithm>
#include <limits>

#include "minv/kernels.hpp"

namespace minv {

bool Bucket::balanced() const { return row_length() >= 0; }

int Bucket::row_length() const {
    if (signature.empty()) return -1;
    long len = -1;
    if (rows.size() != signature.size()) return -1;
    for (int color : signature) {
        auto it = rows.find(color);
        if (it == rows.end()) return -1;
        const long l = static_cast<long>(it->second.size());
        if (l == 0) return -1;
        if (len < 0) len = l;
        if (l != len) return -1;
    }
    return static_cast<int>(len);
}

namespace {

// A residue is constructible iff it is empty or p >= m and no color count
// exceeds floor(p/m).
bool residue_ok(long pts, long maxcount, int m) {
    if (pts == 0) return true;
    return pts >= m && maxcount * m <= pts;
}

}  // namespace

std::vector<Bucket> assign_buckets(const std::vector<int>& points, const Dataset& ds, int m) {
    if (m < 1) throw InvalidInputError("assign_buckets: m must be >= 1");

    std::map<int, std::vector<int>> remaining;  // color -> ascending point indices
    {
        std::vector<int> sorted = points;
        std::sort(sorted.begin(), sorted.end());
        int prev = -1;
        for (int i : sorted) {
            if (i < 0 || i >= ds.size() || i == prev)
                throw InvalidInputError("assign_buckets: bad or duplicate point index " +
                                        std::to_string(i));
            prev = i;
            remaining[ds.color(i)].push_back(i);
        }
    }

    long total = static_cast<long>(points.size());
    std::vector<Bucket> buckets;

    while (total > 0) {
        long maxcount = 0;
        for (const auto& [color, pts] : remaining)
            maxcount = std::max(maxcount, static_cast<long>(pts.size()));
        if (!residue_ok(total, maxcount, m)) {
            std::vector<int> stranded;
            std::string names;
            if (static_cast<long>(remaining.size()) < m) {
                for (const auto& [color, pts] : remaining) stranded.push_back(color);
            } else {
                for (const auto& [color, pts] : remaining)
                    if (static_cast<long>(pts.size()) * m > total) stranded.push_back(color);
            }
            for (int c : stranded) names += (names.empty() ? "" : ", ") + ds.color_name(c);
            throw InfeasibilityError(
                "assign_buckets: residue of " + std::to_string(total) +
                    " points cannot form feasible buckets; stranded colors: " + names,
                stranded);
        }

        // Colors by frequency (desc), ties by smallest remaining point index.
        std::vector<int> order;
        order.reserve(remaining.size());
        for (const auto& [color, pts] : remaining) order.push_back(color);
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            const auto& ra = remaining[a];
            const auto& rb = remaining[b];
            if (ra.size() != rb.size()) return ra.size() > rb.size();
            return ra.front() < rb.front();
        });

        const int q = static_cast<int>(order.size());
        const int max_sig = std::min(q, 2 * m - 1);
        bool emitted = false;
        for (int eta = std::min(m, max_sig); eta <= max_sig && !emitted; ++eta) {
            long rmax = std::numeric_limits<long>::max();
            for (int k = 0; k < eta; ++k)
                rmax = std::min(rmax, static_cast<long>(remaining[order[static_cast<std::size_t>(k)]].size()));
            const long top_count = static_cast<long>(remaining[order[0]].size());
            const long next_count =
                eta < q ? static_cast<long>(remaining[order[static_cast<std::size_t>(eta)]].size()) : 0;
            for (long r = rmax; r >= 1 && !emitted; --r) {
                const long rem_pts = total - static_cast<long>(eta) * r;
                const long rem_max = std::max(top_count - r, next_count);
                if (!residue_ok(rem_pts, rem_max, m)) continue;
                Bucket b;
                for (int k = 0; k < eta; ++k) {
                    const int color = order[static_cast<std::size_t>(k)];
                    auto& pool = remaining[color];
                    b.signature.push_back(color);
                    b.rows[color].assign(pool.begin(), pool.begin() + r);
                    pool.erase(pool.begin(), pool.begin() + r);
                    if (pool.empty()) remaining.erase(color);
                }
                std::sort(b.signature.begin(), b.signature.end());
                total -= static_cast<long>(eta) * r;
                buckets.push_back(std::move(b));
                emitted = true;
            }
        }
        if (!emitted)
            throw InfeasibilityError("assign_buckets: no admissible bucket for a feasible residue");
    }
    return buckets;
}

std::vector<std::vector<int>> partition_balanced_rows(
    const std::vector<std::vector<int>>& rows,
    const std::function<std::span<const double>(int)>& coords, int dim) {
    if (rows.empty()) throw InvalidInputError("partition_balanced_rows: no rows");
    const std::size_t r = rows.front().size();
    for (const auto& row : rows)
        if (row.size() != r || row.empty())
            throw InvalidInputError("partition_balanced_rows: rows are not balanced");

    std::vector<double> center(static_cast<std::size_t>(dim), 0.0);
    std::size_t count = 0;
    for (const auto& row : rows)
        for (int item : row) {
            kernels::axpy(center.data(), 1.0, coords(item).data(), center.size());
            ++count;
        }
    for (double& v : center) v /= static_cast<double>(count);

    std::vector<std::vector<char>> taken(rows.size());
    for (std::size_t k = 0; k < rows.size(); ++k) taken[k].assign(rows[k].size(), 0);

    std::vector<std::vector<int>> groups;
    groups.reserve(r);
    for (std::size_t g = 0; g < r; ++g) {
        // Seed: unassigned item farthest from the bucket centroid.
        double best_dist = -1.0;
        std::size_t seed_row = 0, seed_pos = 0;
        int seed_item = 0;
        for (std::size_t k = 0; k < rows.size(); ++k)
            for (std::size_t pos = 0; pos < rows[k].size(); ++pos) {
                if (taken[k][pos]) continue;
                const int item = rows[k][pos];
                const double dist =
                    kernels::sq_dist(coords(item).data(), center.data(), center.size());
                if (dist > best_dist ||
                    (dist == best_dist && item < seed_item)) {
                    best_dist = dist;
                    seed_row = k;
                    seed_pos = pos;
                    seed_item = item;
                }
            }
        taken[seed_row][seed_pos] = 1;
        std::vector<int> group{seed_item};
        std::vector<double> gcenter(coords(seed_item).begin(), coords(seed_item).end());

        for (std::size_t k = 0; k < rows.size(); ++k) {
            if (k == seed_row) continue;
            double nearest = std::numeric_limits<double>::infinity();
            std::size_t pick = 0;
            int pick_item = 0;
            bool found = false;
            for (std::size_t pos = 0; pos < rows[k].size(); ++pos) {
                if (taken[k][pos]) continue;
                const int item = rows[k][pos];
                const double dist =
                    kernels::sq_dist(coords(item).data(), gcenter.data(), gcenter.size());
                if (!found || dist < nearest || (dist == nearest && item < pick_item)) {
                    nearest = dist;
                    pick = pos;
                    pick_item = item;
                    found = true;
                }
            }
            taken[k][pick] = 1;
            // Running centroid over the group built so far.
            const double n = static_cast<double>(group.size());
            auto q = coords(pick_item);
            for (std::size_t t = 0; t < gcenter.size(); ++t)
                gcenter[t] = (gcenter[t] * n + q[t]) / (n + 1.0);
            group.push_back(pick_item);
        }
        groups.push_back(std::move(group));
    }
    return groups;
}

std::vector<Cluster> partition_bucket(const Bucket& b, const Dataset& ds, int m) {
    const int r = b.row_length();
    if (r < 0) throw InvalidInputError("partition_bucket: bucket is not balanced");
    if (static_cast<int>(b.signature.size()) < m)
        throw InvalidInputError("partition_bucket: signature smaller than m");

    std::vector<std::vector<int>> rows;
    rows.reserve(b.signature.size());
    for (int color : b.signature) rows.push_back(b.rows.at(color));

    auto coords = [&](int i) { return ds.qi(i); };
    std::vector<Cluster> clusters;
    for (auto& group : partition_balanced_rows(rows, coords, ds.dim())) {
        Cluster c;
        c.members = std::move(group);
        std::sort(c.members.begin(), c.members.end());
        clusters.push_back(std::move(c));
    }
    return clusters;
}

Clustering initial_clustering(const Dataset& ds, int m) {
    std::vector<int> all(static_cast<std::size_t>(ds.size()));
    for (int i = 0; i < ds.size(); ++i) all[static_cast<std::size_t>(i)] = i;
    Clustering k;
    for (const Bucket& b : assign_buckets(all, ds, m))
        for (Cluster& c : partition_bucket(b, ds, m)) k.clusters.push_back(std::move(c));
    return k;
}

}  // namespace minv

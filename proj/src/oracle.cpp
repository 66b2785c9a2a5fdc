#include "minv/oracle.hpp"

#include <algorithm>

namespace minv {

namespace {

struct Enumerator {
    const Dataset& ds;
    int m;
    int p;
    std::vector<char> assigned;
    std::vector<Cluster> current;
    OracleResult result;

    Enumerator(const Dataset& d, int mm) : ds(d), m(mm), p(d.size()) {
        assigned.assign(static_cast<std::size_t>(p), 0);
    }

    void complete_partition() {
        ++result.partitions_enumerated;
        Clustering k;
        k.clusters = current;
        const double sse = total_sse(k, ds);
        if (!result.feasible || sse < result.sse) {
            result.feasible = true;
            result.sse = sse;
            result.clustering = std::move(k);
        }
    }

    // Grow the cluster anchored at its first member by members with larger
    // indices and unused colors; emit when the size window is reached.
    void extend(Cluster& c, std::vector<char>& used_colors, int next) {
        const int size = static_cast<int>(c.members.size());
        if (size >= m) {
            current.push_back(c);
            recurse();
            current.pop_back();
        }
        if (size == 2 * m - 1) return;
        for (int i = next; i < p; ++i) {
            if (assigned[static_cast<std::size_t>(i)]) continue;
            const int col = ds.color(i);
            if (used_colors[static_cast<std::size_t>(col)]) continue;
            assigned[static_cast<std::size_t>(i)] = 1;
            used_colors[static_cast<std::size_t>(col)] = 1;
            c.members.push_back(i);
            extend(c, used_colors, i + 1);
            c.members.pop_back();
            used_colors[static_cast<std::size_t>(col)] = 0;
            assigned[static_cast<std::size_t>(i)] = 0;
        }
    }

    void recurse() {
        int anchor = -1;
        for (int i = 0; i < p; ++i)
            if (!assigned[static_cast<std::size_t>(i)]) {
                anchor = i;
                break;
            }
        if (anchor < 0) {
            complete_partition();
            return;
        }
        std::vector<char> used_colors(static_cast<std::size_t>(ds.num_colors()), 0);
        assigned[static_cast<std::size_t>(anchor)] = 1;
        used_colors[static_cast<std::size_t>(ds.color(anchor))] = 1;
        Cluster c;
        c.members.push_back(anchor);
        extend(c, used_colors, anchor + 1);
        assigned[static_cast<std::size_t>(anchor)] = 0;
    }
};

}  // namespace

OracleResult brute_force_optimal(const Dataset& ds, int m, int cap) {
    if (m < 1) throw InvalidInputError("brute_force_optimal: m must be >= 1");
    if (ds.size() > cap)
        throw BudgetError("brute_force_optimal: dataset has " + std::to_string(ds.size()) +
                          " points, cap is " + std::to_string(cap));
    Enumerator e(ds, m);
    e.recurse();
    return std::move(e.result);
}

}  // namespace minv

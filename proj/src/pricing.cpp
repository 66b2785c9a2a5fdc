#include "minv/pricing.hpp"

#include <algorithm>
#include <limits>

namespace minv {

PricingInstance::PricingInstance(std::vector<int> points, const Dataset& ds, int m)
    : points_(std::move(points)), m_(m), num_colors_(ds.num_colors()) {
    if (m_ < 1) throw InvalidInputError("PricingInstance: m must be >= 1");
    std::sort(points_.begin(), points_.end());
    const std::size_t n = points_.size();
    if (n == 0) throw InvalidInputError("PricingInstance: empty point set");
    colors_.resize(n);
    for (std::size_t i = 0; i < n; ++i) colors_[i] = ds.color(points_[i]);
    dist_.assign(n * n, 0.0);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) {
            const double d = squared_distance(ds.qi(points_[a]), ds.qi(points_[b]));
            dist_[a * n + b] = d;
            dist_[b * n + a] = d;
        }
}

namespace {

struct Search {
    const PricingInstance& inst;
    int eta;
    long node_cap;
    bool use_pruning;

    std::vector<int> order;        // local indices sorted by dual desc
    std::vector<double> lam;       // duals in `order` position
    std::vector<double> lam_pref;  // prefix sums over `order`
    std::vector<char> color_used;

    std::vector<int> chosen;  // positions into `order`
    double best = std::numeric_limits<double>::infinity();
    std::vector<int> best_members;  // local indices
    long nodes = 0;
    bool aborted = false;

    Search(const PricingInstance& pi, std::span<const double> duals, int size, long cap, bool prune)
        : inst(pi), eta(size), node_cap(cap), use_pruning(prune) {
        const int n = inst.size();
        order.resize(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            if (duals[static_cast<std::size_t>(a)] != duals[static_cast<std::size_t>(b)])
                return duals[static_cast<std::size_t>(a)] > duals[static_cast<std::size_t>(b)];
            return a < b;
        });
        lam.resize(order.size());
        for (std::size_t k = 0; k < order.size(); ++k)
            lam[k] = duals[static_cast<std::size_t>(order[k])];
        lam_pref.resize(order.size() + 1, 0.0);
        for (std::size_t k = 0; k < order.size(); ++k) lam_pref[k + 1] = lam_pref[k] + lam[k];
        color_used.assign(static_cast<std::size_t>(inst.num_colors()), 0);
        chosen.reserve(static_cast<std::size_t>(eta));
    }

    void dfs(int from_pos, double pair_sum, double lam_sum) {
        if (aborted) return;
        const int k = static_cast<int>(chosen.size());
        if (k == eta) {
            const double rc = pair_sum / static_cast<double>(eta) - lam_sum;
            if (rc < best) {
                best = rc;
                best_members.clear();
                for (int pos : chosen) best_members.push_back(order[static_cast<std::size_t>(pos)]);
            }
            return;
        }
        const int need = eta - k;
        const int n = static_cast<int>(order.size());
        for (int pos = from_pos; pos + need <= n; ++pos) {
            if (++nodes > node_cap) {
                aborted = true;
                return;
            }
            if (use_pruning) {
                // Largest dual mass still reachable from this position; the
                // candidates are dual-sorted, so it is the next `need` values.
                const double lam_best = lam_pref[static_cast<std::size_t>(pos + need)] -
                                        lam_pref[static_cast<std::size_t>(pos)];
                if (pair_sum / static_cast<double>(eta) - lam_sum - lam_best >= best - 1e-12)
                    return;  // monotone in pos: nothing further can beat the incumbent
            }
            const int cand = order[static_cast<std::size_t>(pos)];
            const int col = inst.color(cand);
            if (color_used[static_cast<std::size_t>(col)]) continue;
            double delta = 0.0;
            for (int cpos : chosen)
                delta += inst.dist(order[static_cast<std::size_t>(cpos)], cand);
            color_used[static_cast<std::size_t>(col)] = 1;
            chosen.push_back(pos);
            dfs(pos + 1, pair_sum + delta, lam_sum + lam[static_cast<std::size_t>(pos)]);
            chosen.pop_back();
            color_used[static_cast<std::size_t>(col)] = 0;
            if (aborted) return;
        }
    }
};

}  // namespace

PricingOutcome min_reduced_cost_cluster(const PricingInstance& inst, std::span<const double> duals,
                                        int eta, long node_cap, bool use_pruning) {
    if (eta < 1 || eta > inst.size()) return {std::nullopt, true, 0};
    if (static_cast<int>(duals.size()) != inst.size())
        throw InvalidInputError("min_reduced_cost_cluster: dual vector size mismatch");

    Search s(inst, duals, eta, node_cap, use_pruning);
    s.dfs(0, 0.0, 0.0);

    PricingOutcome out;
    out.nodes = s.nodes;
    out.exact = !s.aborted;
    if (!s.best_members.empty()) {
        PricedColumn col;
        col.reduced_cost = s.best;
        col.cluster.members = std::move(s.best_members);
        std::sort(col.cluster.members.begin(), col.cluster.members.end());
        out.column = std::move(col);
    }
    return out;
}

PricingOutcome price_all_sizes(const PricingInstance& inst, std::span<const double> duals,
                               long node_cap) {
    PricingOutcome best;
    best.exact = true;
    for (int eta = inst.m(); eta <= 2 * inst.m() - 1; ++eta) {
        PricingOutcome cur = min_reduced_cost_cluster(inst, duals, eta, node_cap);
        best.nodes += cur.nodes;
        best.exact = best.exact && cur.exact;
        if (cur.column &&
            (!best.column || cur.column->reduced_cost < best.column->reduced_cost))
            best.column = std::move(cur.column);
    }
    if (best.column && best.column->reduced_cost >= kNegativeReducedCost) best.column.reset();
    return best;
}

}  // namespace minv

#include "minv/lp.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "minv/kernels.hpp"

namespace minv {

namespace {

constexpr double kOptTol = 1e-7;    // reduced-cost optimality threshold
constexpr double kFeasTol = 1e-7;   // coverage residual bound
constexpr double kPivotTol = 1e-9;  // smallest admissible pivot element
constexpr double kZeroTol = 1e-11;
constexpr int kDegenerateThreshold = 60;  // pivots before switching to Bland
constexpr long kRefactorInterval = 64;

}  // namespace

Column make_column(Cluster c, const Dataset& ds) {
    Column col;
    col.weight = cluster_weight(c, ds);
    col.cluster = std::move(c);
    return col;
}

struct RestrictedMaster::Costs {
    // phase 1: artificials cost 1, structural 0; phase 2: structural w_C.
    bool phase_one = false;
    const std::vector<Column>* cols = nullptr;

    double structural(int j) const {
        return phase_one ? 0.0 : (*cols)[static_cast<std::size_t>(j)].weight;
    }
    double artificial() const { return phase_one ? 1.0 : 0.0; }
    double of(int basis_entry) const {
        return basis_entry >= 0 ? structural(basis_entry) : artificial();
    }
};

RestrictedMaster::RestrictedMaster(int rows) : rows_(rows) {
    if (rows < 1) throw InvalidInputError("RestrictedMaster: rows must be >= 1");
}

int RestrictedMaster::add_column(Column col) {
    const auto& mem = col.cluster.members;
    if (mem.empty()) throw InvalidInputError("add_column: empty cluster");
    int prev = -1;
    for (int i : mem) {
        if (i <= prev || i >= rows_)
            throw InvalidInputError("add_column: bad member index " + std::to_string(i));
        prev = i;
    }
    cols_.push_back(std::move(col));
    in_basis_.push_back(0);
    return static_cast<int>(cols_.size()) - 1;
}

void RestrictedMaster::cold_start() {
    const std::size_t p = static_cast<std::size_t>(rows_);
    basis_.resize(p);
    for (int r = 0; r < rows_; ++r) basis_[static_cast<std::size_t>(r)] = -1 - r;
    binv_.assign(p * p, 0.0);
    for (std::size_t r = 0; r < p; ++r) binv_[r * p + r] = 1.0;
    xb_.assign(p, 1.0);
    std::fill(in_basis_.begin(), in_basis_.end(), 0);
    pivots_since_refactor_ = 0;
}

void RestrictedMaster::refactor() {
    const std::size_t p = static_cast<std::size_t>(rows_);
    // Row-major Gauss-Jordan with partial pivoting; contiguous row ops.
    std::vector<double> b(p * p, 0.0), inv(p * p, 0.0);
    for (std::size_t c = 0; c < p; ++c) {
        const int entry = basis_[c];
        if (entry >= 0) {
            for (int i : cols_[static_cast<std::size_t>(entry)].cluster.members)
                b[static_cast<std::size_t>(i) * p + c] = 1.0;
        } else {
            b[static_cast<std::size_t>(-1 - entry) * p + c] = 1.0;
        }
        inv[c * p + c] = 1.0;
    }
    for (std::size_t k = 0; k < p; ++k) {
        std::size_t piv = k;
        double best = std::fabs(b[k * p + k]);
        for (std::size_t i = k + 1; i < p; ++i) {
            const double v = std::fabs(b[i * p + k]);
            if (v > best) {
                best = v;
                piv = i;
            }
        }
        if (best < 1e-12) throw SolverError("refactor: singular basis (pivot " +
                                            std::to_string(best) + " at column " + std::to_string(k) + ")");
        if (piv != k) {
            std::swap_ranges(b.begin() + static_cast<long>(piv * p),
                             b.begin() + static_cast<long>((piv + 1) * p),
                             b.begin() + static_cast<long>(k * p));
            std::swap_ranges(inv.begin() + static_cast<long>(piv * p),
                             inv.begin() + static_cast<long>((piv + 1) * p),
                             inv.begin() + static_cast<long>(k * p));
        }
        const double f = 1.0 / b[k * p + k];
        for (std::size_t j = 0; j < p; ++j) {
            b[k * p + j] *= f;
            inv[k * p + j] *= f;
        }
        for (std::size_t i = 0; i < p; ++i) {
            if (i == k) continue;
            const double g = b[i * p + k];
            if (g == 0.0) continue;
            kernels::axpy(&b[i * p], -g, &b[k * p], p);
            kernels::axpy(&inv[i * p], -g, &inv[k * p], p);
            b[i * p + k] = 0.0;
        }
    }
    // Store column-major and refresh the basic values (b = ones).
    for (std::size_t i = 0; i < p; ++i) {
        xb_[i] = kernels::sum(&inv[i * p], p);
        for (std::size_t j = 0; j < p; ++j) binv_[j * p + i] = inv[i * p + j];
    }
    for (double& v : xb_)
        if (v < 0.0 && v > -1e-9) v = 0.0;
    pivots_since_refactor_ = 0;
}

std::vector<double> RestrictedMaster::compute_duals(const Costs& costs) const {
    const std::size_t p = static_cast<std::size_t>(rows_);
    std::vector<double> cb(p);
    for (std::size_t i = 0; i < p; ++i) cb[i] = costs.of(basis_[i]);
    std::vector<double> duals(p);
    for (std::size_t j = 0; j < p; ++j) duals[j] = kernels::dot(cb.data(), &binv_[j * p], p);
    return duals;
}

void RestrictedMaster::run_simplex(const Costs& costs, long& iters) {
    const std::size_t p = static_cast<std::size_t>(rows_);
    const int n = num_columns();
    const long max_iters = 20000 + 200L * rows_ + 20L * n;
    int degenerate_run = 0;
    bool bland = false;
    std::vector<double> u(p);

    for (long it = 0;; ++it) {
        if (it > max_iters)
            throw SolverError("simplex: iteration limit exceeded (" + std::to_string(max_iters) + ")");
        const std::vector<double> duals = compute_duals(costs);

        int enter = -1;
        double best_rc = -kOptTol;
        for (int j = 0; j < n; ++j) {
            if (in_basis_[static_cast<std::size_t>(j)]) continue;
            double rc = costs.structural(j);
            for (int i : cols_[static_cast<std::size_t>(j)].cluster.members)
                rc -= duals[static_cast<std::size_t>(i)];
            if (rc < best_rc) {
                enter = j;
                best_rc = rc;
                if (bland) break;  // smallest improving index
            }
        }
        if (enter < 0) return;  // reduced costs all >= -kOptTol

        // u = B^-1 a_enter
        std::fill(u.begin(), u.end(), 0.0);
        for (int i : cols_[static_cast<std::size_t>(enter)].cluster.members)
            kernels::axpy(u.data(), 1.0, &binv_[static_cast<std::size_t>(i) * p], p);

        double theta = std::numeric_limits<double>::infinity();
        int leave = -1;
        auto var_key = [&](int row) {
            const int entry = basis_[static_cast<std::size_t>(row)];
            return entry >= 0 ? entry : n + (-1 - entry);
        };
        for (int i = 0; i < rows_; ++i) {
            const double ui = u[static_cast<std::size_t>(i)];
            if (ui <= kPivotTol) continue;
            const double ratio = xb_[static_cast<std::size_t>(i)] / ui;
            const double slack = ratio - theta;
            if (slack < -1e-10) {
                theta = ratio;
                leave = i;
            } else if (slack <= 1e-10 && leave >= 0) {
                if (bland) {
                    if (var_key(i) < var_key(leave)) leave = i;
                } else {
                    // Prefer driving artificials out, then the larger pivot.
                    const bool i_art = basis_[static_cast<std::size_t>(i)] < 0;
                    const bool l_art = basis_[static_cast<std::size_t>(leave)] < 0;
                    if (i_art != l_art) {
                        if (i_art) leave = i;
                    } else if (ui > u[static_cast<std::size_t>(leave)]) {
                        leave = i;
                    }
                }
            }
        }
        if (leave < 0)
            throw SolverError("simplex: unbounded direction on a cover polytope");

        theta = std::max(theta, 0.0);
        const double piv = u[static_cast<std::size_t>(leave)];

        // Gauss-Jordan update of B^-1 (column-major) and the basic values.
        for (std::size_t c = 0; c < p; ++c) {
            double* col = &binv_[c * p];
            const double t = col[static_cast<std::size_t>(leave)] / piv;
            if (t == 0.0) continue;
            kernels::axpy(col, -t, u.data(), p);
            col[static_cast<std::size_t>(leave)] = t;
        }
        kernels::axpy(xb_.data(), -theta, u.data(), p);
        xb_[static_cast<std::size_t>(leave)] = theta;
        for (double& v : xb_)
            if (v < 0.0 && v > -1e-9) v = 0.0;

        const int old_entry = basis_[static_cast<std::size_t>(leave)];
        if (old_entry >= 0) in_basis_[static_cast<std::size_t>(old_entry)] = 0;
        basis_[static_cast<std::size_t>(leave)] = enter;
        in_basis_[static_cast<std::size_t>(enter)] = 1;
        ++iters;

        if (theta <= kZeroTol) {
            if (++degenerate_run > kDegenerateThreshold) bland = true;
        } else {
            degenerate_run = 0;
            bland = false;
        }
        if (++pivots_since_refactor_ >= kRefactorInterval) refactor();
    }
}

MasterSolution RestrictedMaster::solve() {
    if (cols_.empty()) throw InfeasibilityError("solve: no columns");
    long iters = 0;

    if (!warm_) {
        cold_start();
        Costs phase1;
        phase1.phase_one = true;
        phase1.cols = &cols_;
        run_simplex(phase1, iters);
        double artificial_mass = 0.0;
        for (int i = 0; i < rows_; ++i)
            if (basis_[static_cast<std::size_t>(i)] < 0)
                artificial_mass += xb_[static_cast<std::size_t>(i)];
        if (artificial_mass > kFeasTol)
            throw InfeasibilityError("solve: columns admit no fractional cover (phase-1 mass " +
                                     std::to_string(artificial_mass) + ")");
    }

    Costs phase2;
    phase2.cols = &cols_;
    run_simplex(phase2, iters);

    // Coverage check; one refactor-and-retry on drift.
    for (int attempt = 0;; ++attempt) {
        std::vector<double> primal(static_cast<std::size_t>(num_columns()), 0.0);
        for (int i = 0; i < rows_; ++i) {
            const int entry = basis_[static_cast<std::size_t>(i)];
            if (entry >= 0) primal[static_cast<std::size_t>(entry)] = xb_[static_cast<std::size_t>(i)];
        }
        std::vector<double> resid(static_cast<std::size_t>(rows_), -1.0);
        for (int j = 0; j < num_columns(); ++j) {
            const double xj = primal[static_cast<std::size_t>(j)];
            if (xj == 0.0) continue;
            for (int i : cols_[static_cast<std::size_t>(j)].cluster.members)
                resid[static_cast<std::size_t>(i)] += xj;
        }
        for (int i = 0; i < rows_; ++i) {
            const int entry = basis_[static_cast<std::size_t>(i)];
            if (entry < 0)  // basic artificial mass lands on its own row
                resid[static_cast<std::size_t>(-1 - entry)] += xb_[static_cast<std::size_t>(i)];
        }
        double max_resid = 0.0;
        for (int i = 0; i < rows_; ++i)
            max_resid = std::max(max_resid, std::fabs(resid[static_cast<std::size_t>(i)]));
        if (max_resid <= kFeasTol) {
            MasterSolution sol;
            sol.primal = std::move(primal);
            for (double& v : sol.primal) {
                if (v < 0.0 && v > -1e-9) v = 0.0;
                if (v > 1.0 && v < 1.0 + 1e-9) v = 1.0;
            }
            sol.duals = compute_duals(phase2);
            sol.objective = 0.0;
            for (int j = 0; j < num_columns(); ++j)
                sol.objective += cols_[static_cast<std::size_t>(j)].weight *
                                 sol.primal[static_cast<std::size_t>(j)];
            sol.iterations = iters;
            warm_ = true;
            return sol;
        }
        if (attempt >= 1)
            throw SolverError("solve: coverage residual " + std::to_string(max_resid) +
                              " persists after refactorization");
        refactor();
        run_simplex(phase2, iters);
    }
}

MasterSolution solve_restricted_master(const std::vector<Column>& columns, int p) {
    RestrictedMaster rm(p);
    for (const Column& c : columns) rm.add_column(c);
    return rm.solve();
}

namespace {

struct BranchAndBound {
    const std::vector<Column>& cols;
    int p;
    std::chrono::steady_clock::time_point deadline;

    std::vector<char> forbidden;
    std::vector<int> forced;
    double forced_cost = 0.0;

    double best_obj = std::numeric_limits<double>::infinity();
    std::vector<int> best_sel;
    bool have_incumbent = false;
    bool timed_out = false;
    long nodes = 0;

    BranchAndBound(const std::vector<Column>& c, int rows) : cols(c), p(rows) {
        forbidden.assign(c.size(), 0);
    }

    void offer(const std::vector<int>& selection) {
        double obj = 0.0;
        for (int j : selection) obj += cols[static_cast<std::size_t>(j)].weight;
        if (!have_incumbent || obj < best_obj) {
            best_obj = obj;
            best_sel = selection;
            have_incumbent = true;
        }
    }

    void recurse(const std::vector<char>& covered, int uncovered_count) {
        ++nodes;
        if (std::chrono::steady_clock::now() > deadline) {
            timed_out = true;
            return;
        }
        if (uncovered_count == 0) {
            offer(forced);
            return;
        }

        // Reduced problem over uncovered rows and compatible free columns.
        std::vector<int> row_map(static_cast<std::size_t>(p), -1);
        int sub_rows = 0;
        for (int i = 0; i < p; ++i)
            if (!covered[static_cast<std::size_t>(i)]) row_map[static_cast<std::size_t>(i)] = sub_rows++;

        std::vector<int> active;
        for (int j = 0; j < static_cast<int>(cols.size()); ++j) {
            if (forbidden[static_cast<std::size_t>(j)]) continue;
            bool compatible = true;
            for (int i : cols[static_cast<std::size_t>(j)].cluster.members)
                if (covered[static_cast<std::size_t>(i)]) {
                    compatible = false;
                    break;
                }
            if (compatible) active.push_back(j);
        }
        if (active.empty()) return;

        RestrictedMaster rm(sub_rows);
        for (int j : active) {
            Column c = cols[static_cast<std::size_t>(j)];
            for (int& i : c.cluster.members) i = row_map[static_cast<std::size_t>(i)];
            rm.add_column(std::move(c));
        }
        MasterSolution sol;
        try {
            sol = rm.solve();
        } catch (const InfeasibilityError&) {
            return;
        }
        if (forced_cost + sol.objective >= best_obj - 1e-9) return;

        int branch = -1;
        double branch_frac = 2.0;
        bool integral = true;
        for (std::size_t k = 0; k < active.size(); ++k) {
            const double x = sol.primal[k];
            if (x > 1e-6 && x < 1.0 - 1e-6) integral = false;
            const double frac = std::fabs(x - 0.5);
            if (frac < branch_frac) {
                branch_frac = frac;
                branch = static_cast<int>(k);
            }
        }
        if (integral) {
            std::vector<int> selection = forced;
            std::vector<char> hit(static_cast<std::size_t>(p), 0);
            bool valid = true;
            for (std::size_t k = 0; k < active.size() && valid; ++k) {
                if (sol.primal[k] <= 0.5) continue;
                selection.push_back(active[k]);
                for (int i : cols[static_cast<std::size_t>(active[k])].cluster.members) {
                    if (covered[static_cast<std::size_t>(i)] || hit[static_cast<std::size_t>(i)]) valid = false;
                    hit[static_cast<std::size_t>(i)] = 1;
                }
            }
            if (valid) {
                int hits = 0;
                for (int i = 0; i < p; ++i) hits += hit[static_cast<std::size_t>(i)] ? 1 : 0;
                valid = hits == uncovered_count;
            }
            if (valid) {
                offer(selection);
                return;
            }
        }
        if (branch < 0) return;
        const int j = active[static_cast<std::size_t>(branch)];

        // Include first.
        {
            std::vector<char> covered2 = covered;
            int uncovered2 = uncovered_count;
            for (int i : cols[static_cast<std::size_t>(j)].cluster.members) {
                covered2[static_cast<std::size_t>(i)] = 1;
                --uncovered2;
            }
            forced.push_back(j);
            forced_cost += cols[static_cast<std::size_t>(j)].weight;
            recurse(covered2, uncovered2);
            forced_cost -= cols[static_cast<std::size_t>(j)].weight;
            forced.pop_back();
        }
        if (timed_out) return;
        // Exclude.
        forbidden[static_cast<std::size_t>(j)] = 1;
        recurse(covered, uncovered_count);
        forbidden[static_cast<std::size_t>(j)] = 0;
    }
};

}  // namespace

BinaryMasterResult solve_restricted_master_binary(const std::vector<Column>& columns, int p,
                                                  double time_limit_s,
                                                  const std::vector<int>& initial) {
    BranchAndBound bnb(columns, p);
    bnb.deadline = std::chrono::steady_clock::now() +
                   std::chrono::microseconds(static_cast<long>(time_limit_s * 1e6));
    if (!initial.empty()) bnb.offer(initial);
    std::vector<char> covered(static_cast<std::size_t>(p), 0);
    bnb.recurse(covered, p);

    if (!bnb.have_incumbent) {
        if (bnb.timed_out)
            throw BudgetError("binary master: time limit reached before any integer cover");
        throw InfeasibilityError("binary master: no integer cover exists in the column set");
    }
    BinaryMasterResult res;
    res.chosen = bnb.best_sel;
    std::sort(res.chosen.begin(), res.chosen.end());
    res.objective = bnb.best_obj;
    res.optimal = !bnb.timed_out;
    res.nodes = bnb.nodes;
    for (int j : res.chosen)
        res.clustering.clusters.push_back(columns[static_cast<std::size_t>(j)].cluster);
    return res;
}

}  // namespace minv

#pragma once

#include <optional>
#include <vector>

#include "minv/core.hpp"

namespace minv {

/// One master-problem variable: a feasible cluster and its cost w_C.
struct Column {
    Cluster cluster;
    double weight = 0.0;
};

Column make_column(Cluster c, const Dataset& ds);

struct MasterSolution {
    std::vector<double> primal;  // aligned with the column list
    std::vector<double> duals;   // one multiplier per covering row
    double objective = 0.0;
    long iterations = 0;
};

/// Restricted master LP: min w'x subject to exact cover of the rows,
/// x >= 0 (the unit upper bounds are implied by the cover rows). Solved
/// by a dense two-phase revised simplex; after add_column the next solve
/// warm-starts from the previous basis.
class RestrictedMaster {
public:
    explicit RestrictedMaster(int rows);

    int add_column(Column col);
    int rows() const { return rows_; }
    int num_columns() const { return static_cast<int>(cols_.size()); }
    const Column& column(int j) const { return cols_[static_cast<std::size_t>(j)]; }
    const std::vector<Column>& columns() const { return cols_; }

    MasterSolution solve();

private:
    struct Costs;
    void cold_start();
    void refactor();
    void run_simplex(const Costs& costs, long& iters);
    std::vector<double> compute_duals(const Costs& costs) const;

    int rows_ = 0;
    std::vector<Column> cols_;
    std::vector<int> basis_;      // >= 0 structural column, -1-r artificial of row r
    std::vector<double> binv_;    // rows x rows, column-major
    std::vector<double> xb_;
    std::vector<char> in_basis_;  // per structural column
    bool warm_ = false;
    long pivots_since_refactor_ = 0;
};

MasterSolution solve_restricted_master(const std::vector<Column>& columns, int p);

struct BinaryMasterResult {
    Clustering clustering;
    std::vector<int> chosen;  // indices into the column list
    double objective = 0.0;
    bool optimal = false;
    long nodes = 0;
};

/// Depth-first branch and bound over the generated columns: branch on the
/// most fractional x_C, include before exclude, LP value as lower bound.
/// `initial` optionally seeds the incumbent with a known cover. On time
/// limit the incumbent is returned with optimal == false.
BinaryMasterResult solve_restricted_master_binary(
    const std::vector<Column>& columns, int p, double time_limit_s,
    const std::vector<int>& initial = {});

}  // namespace minv

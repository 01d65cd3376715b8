#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "psiscore/activity.hpp"
#include "psiscore/graph.hpp"

namespace psiscore {

/// Counts operator applications. `a` counts products with A (either side),
/// `b` counts products with B.
struct MatvecCounter {
    std::size_t a = 0;
    std::size_t b = 0;

    std::size_t total() const noexcept { return a + b; }
};

struct SparseEntry {
    NodeIndex index;
    double value;

    bool operator==(const SparseEntry&) const = default;
};

/// Matrix-free form of the newsfeed/wall model on a graph with activity.
///
///   a_ji = mu_i     / r_j   if i is a leader of j
///   b_ji = lambda_i / r_j   if i is a leader of j
///   c_j  = mu_j     / (lambda_j + mu_j)
///   d_j  = lambda_j / (lambda_j + mu_j)
///
/// where r_j is the total activity of j's leaders. Rows of A and B belonging
/// to nodes without leaders are zero. Neither matrix is ever stored; every
/// application walks the graph once, O(N + M).
///
/// Holds references to the graph and activity; both must outlive it.
class PsiOperator {
public:
    /// Throws std::invalid_argument when the profile length differs from N.
    PsiOperator(const DirectedGraph& graph, const ActivityProfile& activity);
    PsiOperator(DirectedGraph&&, const ActivityProfile&) = delete;
    PsiOperator(const DirectedGraph&, ActivityProfile&&) = delete;
    PsiOperator(DirectedGraph&&, ActivityProfile&&) = delete;

    const DirectedGraph& graph() const noexcept { return *graph_; }
    const ActivityProfile& activity() const noexcept { return *activity_; }
    std::size_t size() const noexcept { return c_.size(); }

    /// r_j, 0 for nodes without leaders.
    const std::vector<double>& denominators() const noexcept { return denom_; }
    const std::vector<double>& c() const noexcept { return c_; }
    const std::vector<double>& d() const noexcept { return d_; }

    /// out = A p
    void apply_a_right(std::span<const double> p, std::span<double> out,
                       MatvecCounter& counter) const;
    /// out^T = s^T A
    void apply_a_left(std::span<const double> s, std::span<double> out,
                      MatvecCounter& counter) const;
    /// out^T = s^T B
    void apply_b_left(std::span<const double> s, std::span<double> out,
                      MatvecCounter& counter) const;

    std::vector<double> apply_a_right(std::span<const double> p, MatvecCounter& counter) const;
    std::vector<double> apply_a_left(std::span<const double> s, MatvecCounter& counter) const;
    std::vector<double> apply_b_left(std::span<const double> s, MatvecCounter& counter) const;

    /// Column i of B, supported on the followers of i, in ascending index order.
    std::vector<SparseEntry> b_column(NodeIndex i) const;

    /// Operator norm of s^T -> s^T B with the L1 vector norm, i.e. the largest
    /// row sum of B: max_j sum_{i in leaders(j)} lambda_i / r_j. This is the
    /// constant that makes ||(x - y)^T B||_1 <= ||B|| ||x - y||_1 hold.
    double b_norm() const noexcept { return b_norm_; }

    /// Largest column sum of B: max_i lambda_i * sum_{j in followers(i)} 1 / r_j.
    double b_max_column_sum() const noexcept { return b_max_column_sum_; }

private:
    void check_size(std::size_t got, const char* what) const;

    const DirectedGraph* graph_;
    const ActivityProfile* activity_;
    std::vector<double> denom_;
    std::vector<double> inv_denom_;
    std::vector<double> c_;
    std::vector<double> d_;
    double b_norm_ = 0.0;
    double b_max_column_sum_ = 0.0;
};

}  // namespace psiscore

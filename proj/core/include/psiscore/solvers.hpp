#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "psiscore/operator.hpp"

namespace psiscore {

inline constexpr std::size_t kDefaultMaxIterations = 100'000;
inline constexpr std::size_t kDefaultDenseCap = 2000;

/// Termination settings shared by all iterative solvers. Gaps are L1 norms.
struct SolverConfig {
    double tolerance = 1e-9;
    std::size_t max_iterations = kDefaultMaxIterations;

    /// Throws std::invalid_argument unless tolerance > 0 and max_iterations >= 1.
    void validate() const;
};

struct SolverResult {
    std::vector<double> psi;
    /// Outer iterations. For the per-origin solver this is the sum over origins.
    std::size_t iterations = 0;
    /// Products with A (or with W for PageRank).
    std::size_t matvec_count = 0;
    /// Products with B; Power-psi performs exactly one.
    std::size_t b_matvec_count = 0;
    /// Termination-rule value after each iteration. For the per-origin solver,
    /// the final gap of each origin in index order.
    std::vector<double> gap_history;
    double wall_seconds = 0.0;
    bool converged = false;

    std::size_t total_matvecs() const noexcept { return matvec_count + b_matvec_count; }
};

/// Newsfeed shares p_i and wall shares q_i of posts originating at one user.
struct NewsfeedWall {
    NodeIndex origin = 0;
    std::vector<double> p;
    std::vector<double> q;
    std::size_t iterations = 0;
    std::size_t matvec_count = 0;
    double final_gap = 0.0;
    bool converged = false;
};

/// State handed to a Power-psi observer after each update of s.
/// At iteration 0 `s` is the initial vector c and `s_change` is 0.
struct PowerPsiStep {
    std::size_t iteration;
    std::span<const double> s;
    /// ||s_t - s_{t-1}||_1
    double s_change;
    /// s_change * ||B||, the value compared against the tolerance.
    double gap;
};

using PowerPsiObserver = std::function<void(const PowerPsiStep&)>;

/// Single-system power iteration for the psi-score.
///
/// Accumulates the series s^T = sum_t c^T A^t through s_t^T = s_{t-1}^T A + c^T
/// starting from s_0 = c, and stops once ||B|| * ||s_t - s_{t-1}||_1 <= tolerance.
/// Then psi = (B^T s + d) / N, so the final psi trajectory moved by at most
/// tolerance / N in L1 during the last step.
SolverResult power_psi(const PsiOperator& op, const SolverConfig& cfg,
                       const PowerPsiObserver& observer = {});

/// Power iteration p <- A p + b_i for one origin, started at p = b_i and
/// stopped when ||p_t - p_{t-1}||_1 <= tolerance. The wall shares follow as
/// q = C p + d_i. Throws std::out_of_range for a bad origin.
NewsfeedWall power_nf(const PsiOperator& op, NodeIndex origin, const SolverConfig& cfg);

/// psi-score by running power_nf once per origin: psi_i = (1/N) sum_n q_i^(n).
/// Origins are processed in index order; per-origin vectors are discarded.
SolverResult psi_via_power_nf(const PsiOperator& op, const SolverConfig& cfg);

/// power_nf for every origin, keeping p_i and q_i. Intended for small graphs.
std::vector<NewsfeedWall> all_newsfeed_walls(const PsiOperator& op, const SolverConfig& cfg);

/// PageRank power method pi_t^T = alpha pi_{t-1}^T W + (1 - alpha)/N 1^T with
/// W the uniform follower -> leader walk. Nodes without leaders have a zero
/// row in W (no dangling redistribution). Starts from the uniform vector and
/// stops when ||pi_t - pi_{t-1}||_1 <= tolerance.
SolverResult pagerank_power(const DirectedGraph& g, double alpha, const SolverConfig& cfg);

/// Raised when a dense computation is requested above the node cap.
class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Reference psi-score from a dense LU solve of (I - A)^T s = c, followed by
/// psi = (B^T s + d) / N. The matrices are assembled here from the graph and
/// activity directly, independently of the operator kernels.
/// Throws CapacityError when N > dense_cap.
std::vector<double> exact_psi(const PsiOperator& op, std::size_t dense_cap = kDefaultDenseCap);

}  // namespace psiscore

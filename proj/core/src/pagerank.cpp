#include "psiscore/solvers.hpp"

#include <chrono>
#include <cmath>

#include <fmt/format.h>

namespace psiscore {

SolverResult pagerank_power(const DirectedGraph& g, double alpha, const SolverConfig& cfg) {
    cfg.validate();
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::invalid_argument(fmt::format("alpha must lie in (0, 1), got {}", alpha));
    }
    const auto start = std::chrono::steady_clock::now();
    const std::size_t n = g.num_nodes();
    const double teleport = (1.0 - alpha) / static_cast<double>(n);

    std::vector<double> inv_out(n, 0.0);
    for (NodeIndex j = 0; j < n; ++j) {
        const auto deg = g.leaders_unchecked(j).size();
        if (deg > 0) {
            inv_out[j] = 1.0 / static_cast<double>(deg);
        }
    }

    SolverResult result;
    std::vector<double> pi(n, 1.0 / static_cast<double>(n));
    std::vector<double> next(n);
    double gap = 0.0;
    do {
        if (result.iterations == cfg.max_iterations) {
            break;
        }
        // (pi^T W)_i = sum over followers j of i of pi_j / outdeg(j)
        gap = 0.0;
        for (NodeIndex i = 0; i < n; ++i) {
            double acc = 0.0;
            for (NodeIndex j : g.followers_unchecked(i)) {
                acc += pi[j] * inv_out[j];
            }
            next[i] = alpha * acc + teleport;
            gap += std::abs(next[i] - pi[i]);
        }
        pi.swap(next);
        ++result.matvec_count;
        ++result.iterations;
        result.gap_history.push_back(gap);
    } while (gap > cfg.tolerance);
    result.converged = gap <= cfg.tolerance;
    result.psi = std::move(pi);
    result.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

}  // namespace psiscore

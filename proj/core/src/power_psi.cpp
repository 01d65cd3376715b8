#include "psiscore/solvers.hpp"

#include <chrono>
#include <cmath>

#include <fmt/format.h>

namespace psiscore {

void SolverConfig::validate() const {
    if (!(tolerance > 0.0) || !std::isfinite(tolerance)) {
        throw std::invalid_argument(fmt::format("tolerance must be positive, got {}", tolerance));
    }
    if (max_iterations < 1) {
        throw std::invalid_argument("max_iterations must be at least 1");
    }
}

SolverResult power_psi(const PsiOperator& op, const SolverConfig& cfg,
                       const PowerPsiObserver& observer) {
    cfg.validate();
    const auto start = std::chrono::steady_clock::now();
    const std::size_t n = op.size();
    const auto& c = op.c();
    const auto& d = op.d();
    const double b_norm = op.b_norm();

    SolverResult result;
    MatvecCounter counter;
    std::vector<double> s(c.begin(), c.end());
    std::vector<double> next(n);

    if (observer) {
        observer({0, s, 0.0, 0.0});
    }

    double gap = 0.0;
    do {
        if (result.iterations == cfg.max_iterations) {
            break;
        }
        op.apply_a_left(s, next, counter);
        double change = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            next[k] += c[k];
            change += std::abs(next[k] - s[k]);
        }
        s.swap(next);
        gap = b_norm * change;
        result.gap_history.push_back(gap);
        ++result.iterations;
        if (observer) {
            observer({result.iterations, s, change, gap});
        }
    } while (gap > cfg.tolerance);
    result.converged = gap <= cfg.tolerance;

    op.apply_b_left(s, next, counter);
    result.psi.resize(n);
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t k = 0; k < n; ++k) {
        result.psi[k] = (next[k] + d[k]) * inv_n;
    }

    result.matvec_count = counter.a;
    result.b_matvec_count = counter.b;
    result.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

}  // namespace psiscore

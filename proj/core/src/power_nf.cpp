#include "psiscore/solvers.hpp"

#include <chrono>
#include <cmath>

#include <fmt/format.h>

namespace psiscore {

namespace {

struct NfWorkspace {
    std::vector<double> p;
    std::vector<double> next;
    std::vector<SparseEntry> b;
};

struct NfRun {
    std::size_t iterations = 0;
    double final_gap = 0.0;
    bool converged = false;
};

// Leaves the converged p_i in ws.p. The A products are added to `counter`.
NfRun run_origin(const PsiOperator& op, NodeIndex origin, const SolverConfig& cfg,
                 NfWorkspace& ws, MatvecCounter& counter) {
    const std::size_t n = op.size();
    ws.b = op.b_column(origin);
    ws.p.assign(n, 0.0);
    ws.next.resize(n);
    for (const auto& e : ws.b) {
        ws.p[e.index] = e.value;
    }

    NfRun run;
    double gap = 0.0;
    do {
        if (run.iterations == cfg.max_iterations) {
            break;
        }
        op.apply_a_right(ws.p, ws.next, counter);
        for (const auto& e : ws.b) {
            ws.next[e.index] += e.value;
        }
        gap = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            gap += std::abs(ws.next[k] - ws.p[k]);
        }
        ws.p.swap(ws.next);
        ++run.iterations;
    } while (gap > cfg.tolerance);
    run.final_gap = gap;
    run.converged = gap <= cfg.tolerance;
    return run;
}

}  // namespace

NewsfeedWall power_nf(const PsiOperator& op, NodeIndex origin, const SolverConfig& cfg) {
    cfg.validate();
    if (origin >= op.size()) {
        throw std::out_of_range(
            fmt::format("origin {} out of range [0, {})", origin, op.size()));
    }
    NfWorkspace ws;
    MatvecCounter counter;
    const NfRun run = run_origin(op, origin, cfg, ws, counter);

    NewsfeedWall out;
    out.origin = origin;
    out.iterations = run.iterations;
    out.matvec_count = counter.a;
    out.final_gap = run.final_gap;
    out.converged = run.converged;
    out.q.resize(op.size());
    for (std::size_t k = 0; k < op.size(); ++k) {
        out.q[k] = op.c()[k] * ws.p[k];
    }
    out.q[origin] += op.d()[origin];
    out.p = std::move(ws.p);
    return out;
}

SolverResult psi_via_power_nf(const PsiOperator& op, const SolverConfig& cfg) {
    cfg.validate();
    const auto start = std::chrono::steady_clock::now();
    const std::size_t n = op.size();
    const auto& c = op.c();
    const auto& d = op.d();
    const double inv_n = 1.0 / static_cast<double>(n);

    SolverResult result;
    result.psi.resize(n);
    result.gap_history.reserve(n);
    result.converged = true;
    MatvecCounter counter;
    NfWorkspace ws;
    for (NodeIndex i = 0; i < n; ++i) {
        const NfRun run = run_origin(op, i, cfg, ws, counter);
        // sum_n q_i^(n) = sum_n c_n p_i^(n) + d_i
        double wall_total = d[i];
        for (std::size_t k = 0; k < n; ++k) {
            wall_total += c[k] * ws.p[k];
        }
        result.psi[i] = wall_total * inv_n;
        result.iterations += run.iterations;
        result.gap_history.push_back(run.final_gap);
        result.converged = result.converged && run.converged;
    }
    result.matvec_count = counter.a;
    result.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

std::vector<NewsfeedWall> all_newsfeed_walls(const PsiOperator& op, const SolverConfig& cfg) {
    std::vector<NewsfeedWall> out;
    out.reserve(op.size());
    for (NodeIndex i = 0; i < op.size(); ++i) {
        out.push_back(power_nf(op, i, cfg));
    }
    return out;
}

}  // namespace psiscore

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "psiscore/metrics.hpp"
#include "psiscore/solvers.hpp"
#include "test_support.hpp"

namespace psiscore {
namespace {

using testing::chain;
using testing::mutual_pair;
using testing::neumann_newsfeed;
using testing::neumann_psi;

const ActivityProfile kHalf2 = homogeneous(2, 0.5, 0.5);

// Frozen closed-form values, checked here against the brute-force series so the
// constants used below are not taken on faith.
constexpr double kChainPsi0 = 0.25, kChainPsi1 = 0.375;
constexpr double kMutualPOrigin1[2] = {2.0 / 3.0, 1.0 / 3.0};

TEST(Oracle, ClosedFormsAgreeWithNeumannSeries) {
    const auto psi_chain = neumann_psi(chain(), kHalf2);
    EXPECT_NEAR(psi_chain[0], kChainPsi0, 1e-15);
    EXPECT_NEAR(psi_chain[1], kChainPsi1, 1e-15);

    const auto psi_mutual = neumann_psi(mutual_pair(), kHalf2);
    EXPECT_NEAR(psi_mutual[0], 0.5, 1e-14);
    EXPECT_NEAR(psi_mutual[1], 0.5, 1e-14);

    const auto p_chain = neumann_newsfeed(chain(), kHalf2, 1);
    EXPECT_NEAR(p_chain[0], 0.5, 1e-15);
    EXPECT_NEAR(p_chain[1], 0.0, 1e-15);

    const auto p_mutual = neumann_newsfeed(mutual_pair(), kHalf2, 1);
    EXPECT_NEAR(p_mutual[0], kMutualPOrigin1[0], 1e-14);
    EXPECT_NEAR(p_mutual[1], kMutualPOrigin1[1], 1e-14);
}

TEST(PowerPsi, MutualPair) {
    const auto g = mutual_pair();
    const PsiOperator op(g, kHalf2);
    const auto r = power_psi(op, {1e-12});
    EXPECT_TRUE(r.converged);
    EXPECT_NEAR(r.psi[0], 0.5, 1e-12);
    EXPECT_NEAR(r.psi[1], 0.5, 1e-12);
    EXPECT_EQ(r.matvec_count, r.iterations);
    EXPECT_EQ(r.b_matvec_count, 1u);
}

TEST(PowerPsi, ChainConvergesInAtMostThreeIterations) {
    const auto g = chain();
    const PsiOperator op(g, kHalf2);
    const auto r = power_psi(op, {1e-12});
    EXPECT_TRUE(r.converged);
    EXPECT_LE(r.iterations, 3u);
    EXPECT_NEAR(r.psi[0], kChainPsi0, 1e-15);
    EXPECT_NEAR(r.psi[1], kChainPsi1, 1e-15);
}

TEST(PowerPsi, ThreeCycleIsUniform) {
    const auto g = testing::three_cycle();
    const auto act = homogeneous(3, 0.15, 0.85);
    const PsiOperator op(g, act);
    const auto r = power_psi(op, {1e-9});
    for (double v : r.psi) EXPECT_NEAR(v, 1.0 / 3.0, 1e-8);
}

TEST(PowerPsi, IterationCapIsReported) {
    const auto g = random_digraph(50, 0.2, 1, true);
    const auto act = homogeneous(50, 0.01, 0.99);
    const PsiOperator op(g, act);
    const auto r = power_psi(op, {1e-12, 5});
    EXPECT_FALSE(r.converged);
    EXPECT_EQ(r.iterations, 5u);
    EXPECT_EQ(r.gap_history.size(), 5u);
    EXPECT_GT(r.gap_history.back(), 1e-12);
    EXPECT_EQ(r.psi.size(), 50u);
}

TEST(PowerPsi, EdgelessGraphGivesOwnPostingShare) {
    const auto g = testing::graph_of(3, {});
    const ActivityProfile act({0.2, 0.5, 1.0}, {0.8, 0.5, 1.0});
    const PsiOperator op(g, act);
    const auto r = power_psi(op, {1e-9});
    EXPECT_TRUE(r.converged);
    EXPECT_NEAR(r.psi[0], 0.2 / 3.0, 1e-16);
    EXPECT_NEAR(r.psi[1], 0.5 / 3.0, 1e-16);
    EXPECT_NEAR(r.psi[2], 0.5 / 3.0, 1e-16);
}

TEST(SolverConfig, Validation) {
    const auto g = chain();
    const PsiOperator op(g, kHalf2);
    EXPECT_THROW(power_psi(op, {0.0}), std::invalid_argument);
    EXPECT_THROW(power_psi(op, {-1.0}), std::invalid_argument);
    EXPECT_THROW(power_psi(op, {1e-9, 0}), std::invalid_argument);
    EXPECT_THROW(power_nf(op, 0, {std::nan("")}), std::invalid_argument);
}

TEST(PowerNf, ChainOriginOne) {
    const auto g = chain();
    const PsiOperator op(g, kHalf2);
    const auto r = power_nf(op, 1, {1e-12});
    EXPECT_TRUE(r.converged);
    EXPECT_NEAR(r.p[0], 0.5, 1e-15);
    EXPECT_NEAR(r.p[1], 0.0, 1e-15);
    EXPECT_NEAR(r.q[0], 0.25, 1e-15);
    EXPECT_NEAR(r.q[1], 0.5, 1e-15);
}

TEST(PowerNf, OriginWithoutFollowersOnlyFillsOwnWall) {
    const auto g = testing::graph_of(3, {});
    const ActivityProfile act({0.2, 0.5, 1.0}, {0.8, 0.5, 1.0});
    const PsiOperator op(g, act);
    const auto r = power_nf(op, 2, {1e-9});
    EXPECT_TRUE(r.converged);
    EXPECT_EQ(r.p, (std::vector<double>{0.0, 0.0, 0.0}));
    EXPECT_EQ(r.q, (std::vector<double>{0.0, 0.0, 0.5}));
}

TEST(PowerNf, MutualPairOriginOne) {
    const auto g = mutual_pair();
    const PsiOperator op(g, kHalf2);
    const auto r = power_nf(op, 1, {1e-13});
    EXPECT_NEAR(r.p[0], kMutualPOrigin1[0], 1e-12);
    EXPECT_NEAR(r.p[1], kMutualPOrigin1[1], 1e-12);
    EXPECT_NEAR(r.q[0], 1.0 / 3.0, 1e-12);
    EXPECT_NEAR(r.q[1], 2.0 / 3.0, 1e-12);
    EXPECT_EQ(r.matvec_count, r.iterations);
}

TEST(PowerNf, BadOriginThrows) {
    const auto g = chain();
    const PsiOperator op(g, kHalf2);
    EXPECT_THROW(power_nf(op, 2, {1e-9}), std::out_of_range);
}

TEST(PowerNf, MatchesBruteForceNewsfeed) {
    const auto g = random_digraph(30, 0.15, 8);
    const auto act = random_uniform(30, 8);
    const PsiOperator op(g, act);
    for (NodeIndex i = 0; i < 30; i += 7) {
        const auto r = power_nf(op, i, {1e-14});
        const auto ref = neumann_newsfeed(g, act, i);
        for (std::size_t k = 0; k < 30; ++k) EXPECT_NEAR(r.p[k], ref[k], 1e-12);
    }
}

TEST(PsiViaPowerNf, ChainSumsWallColumns) {
    const auto g = chain();
    const PsiOperator op(g, kHalf2);
    const auto r = psi_via_power_nf(op, {1e-12});
    EXPECT_TRUE(r.converged);
    EXPECT_NEAR(r.psi[0], kChainPsi0, 1e-15);
    EXPECT_NEAR(r.psi[1], kChainPsi1, 1e-15);
    EXPECT_EQ(r.gap_history.size(), 2u);
}

TEST(PsiViaPowerNf, CostsOrdersOfMagnitudeMoreMatvecs) {
    const auto g = random_digraph_edges(400, 1600, 4);
    const auto act = random_uniform(400, 4);
    const PsiOperator op(g, act);
    const auto fast = power_psi(op, {1e-9});
    const auto slow = psi_via_power_nf(op, {1e-9});
    EXPECT_EQ(slow.matvec_count, slow.iterations);
    EXPECT_GE(slow.matvec_count, 100 * fast.total_matvecs());
    EXPECT_LT(relative_error(slow.psi, fast.psi), 1e-6);
}

TEST(PageRank, SymmetricGraphsAreUniform) {
    const auto cyc = pagerank_power(testing::three_cycle(), 0.85, {1e-9});
    EXPECT_TRUE(cyc.converged);
    for (double v : cyc.psi) EXPECT_NEAR(v, 1.0 / 3.0, 1e-12);
    const auto pair = pagerank_power(mutual_pair(), 0.85, {1e-9});
    for (double v : pair.psi) EXPECT_NEAR(v, 0.5, 1e-12);
}

TEST(PageRank, RejectsAlphaOutsideUnitInterval) {
    EXPECT_THROW(pagerank_power(mutual_pair(), 1.2, {1e-9}), std::invalid_argument);
    EXPECT_THROW(pagerank_power(mutual_pair(), 0.0, {1e-9}), std::invalid_argument);
    EXPECT_THROW(pagerank_power(mutual_pair(), 1.0, {1e-9}), std::invalid_argument);
}

TEST(PageRank, EqualsHomogeneousPsiOnLeaderCompleteGraphs) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto g = random_digraph(120, 0.04, seed, true);
        ASSERT_TRUE(g.every_node_has_leader());
        const auto act = homogeneous(120, 0.15, 0.85);
        const PsiOperator op(g, act);
        const auto psi = power_psi(op, {1e-12});
        const auto pr = pagerank_power(g, 0.85, {1e-12});
        for (std::size_t k = 0; k < 120; ++k) EXPECT_NEAR(pr.psi[k], psi.psi[k], 1e-8);
    }
}

TEST(PageRank, DanglingNodesLeakMassInsteadOfTeleporting) {
    // Same W handling as the psi model, so the equivalence survives leaderless nodes.
    const auto g = random_digraph(80, 0.03, 17);
    ASSERT_FALSE(g.every_node_has_leader());
    const auto act = homogeneous(80, 0.15, 0.85);
    const PsiOperator op(g, act);
    const auto pr = pagerank_power(g, 0.85, {1e-13});
    EXPECT_LT(relative_error(power_psi(op, {1e-13}).psi, pr.psi), 1e-9);
    EXPECT_LT(testing::sum(pr.psi), 1.0 - 1e-3);
}

TEST(ExactPsi, ClosedForms) {
    const auto g = chain();
    const auto c = exact_psi(PsiOperator(g, kHalf2));
    EXPECT_NEAR(c[0], kChainPsi0, 1e-15);
    EXPECT_NEAR(c[1], kChainPsi1, 1e-15);
    const auto h = mutual_pair();
    const auto m = exact_psi(PsiOperator(h, kHalf2));
    EXPECT_NEAR(m[0], 0.5, 1e-15);
    EXPECT_NEAR(m[1], 0.5, 1e-15);
}

TEST(ExactPsi, MatchesNeumannSeriesAndPowerPsi) {
    const auto g = random_digraph(50, 0.1, 12);
    const auto act = random_uniform(50, 12);
    const PsiOperator op(g, act);
    const auto exact = exact_psi(op);
    EXPECT_LE(relative_error(exact, neumann_psi(g, act)), 1e-12);
    EXPECT_LE(relative_error(exact, power_psi(op, {1e-12}).psi), 1e-9);
}

TEST(ExactPsi, CapIsEnforced) {
    const auto g = random_digraph(30, 0.1, 1);
    const auto act = random_uniform(30, 1);
    const PsiOperator op(g, act);
    EXPECT_THROW(exact_psi(op, 29), CapacityError);
    EXPECT_NO_THROW(exact_psi(op, 30));
}

TEST(ExactPsi, SingularSystemIsAnInternalError) {
    // Pure re-posters following each other: A = [[0,1],[1,0]], I - A singular.
    const auto g = mutual_pair();
    const auto act = homogeneous(2, 0.0, 1.0);
    EXPECT_THROW(exact_psi(PsiOperator(g, act)), std::runtime_error);
}

// Instrumented run: rebuild psi_t from each s_t and check the truncation bound.
TEST(SolverProperties, PsiTrajectoryBoundHoldsEveryIteration) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto g = random_digraph(60, 0.08, seed);
        const auto act = random_uniform(60, seed + 50);
        const PsiOperator op(g, act);
        std::vector<double> prev_psi;
        std::size_t checked = 0;
        power_psi(op, {1e-12}, [&](const PowerPsiStep& step) {
            MatvecCounter scratch;
            auto psi = op.apply_b_left(step.s, scratch);
            for (std::size_t k = 0; k < psi.size(); ++k) psi[k] = (psi[k] + op.d()[k]) / 60.0;
            for (double v : step.s) ASSERT_GE(v, 0.0);
            if (!prev_psi.empty()) {
                const double delta = testing::l1(psi, prev_psi);
                EXPECT_LE(delta, step.s_change * op.b_norm() / 60.0 * (1 + 1e-12) + 1e-300);
                ++checked;
            }
            prev_psi = std::move(psi);
        });
        EXPECT_GT(checked, 0u);
    }
}

TEST(SolverProperties, GapHistoryDecreases) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto g = random_digraph(100, 0.05, seed);
        const auto act = random_uniform(100, seed);
        const PsiOperator op(g, act);
        const auto r = power_psi(op, {1e-10});
        for (std::size_t t = 1; t < r.gap_history.size(); ++t)
            EXPECT_LE(r.gap_history[t], r.gap_history[t - 1]);
        const auto pr = pagerank_power(g, 0.85, {1e-10});
        EXPECT_LT(pr.gap_history.back(), pr.gap_history.front());
    }
}

TEST(SolverProperties, CrossSolverAgreement) {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        std::mt19937_64 rng(seed);
        const std::size_t n = 10 + rng() % 190;
        const auto g = random_digraph(n, 0.05 + 0.02 * static_cast<double>(seed % 5), seed);
        const auto act = random_uniform(n, seed + 9);
        const PsiOperator op(g, act);
        const auto exact = exact_psi(op);
        const auto fast = power_psi(op, {1e-10});
        const auto slow = psi_via_power_nf(op, {1e-10});
        EXPECT_LE(relative_error(exact, fast.psi), 1e-6);
        EXPECT_LE(relative_error(exact, slow.psi), 1e-6);
        EXPECT_LE(relative_error(fast.psi, slow.psi), 1e-6);
    }
}

TEST(SolverProperties, WallSharesSumToOneWhenEveryoneFollowsSomeone) {
    const auto g = random_digraph(40, 0.1, 21, true);
    const auto act = random_uniform(40, 21);
    const PsiOperator op(g, act);
    const auto walls = all_newsfeed_walls(op, {1e-13});
    for (std::size_t n = 0; n < 40; ++n) {
        double p_total = 0.0, q_total = 0.0;
        for (const auto& w : walls) {
            p_total += w.p[n];
            q_total += w.q[n];
        }
        EXPECT_NEAR(p_total, 1.0, 1e-10);
        EXPECT_NEAR(q_total, 1.0, 1e-10);
    }
    EXPECT_NEAR(testing::sum(power_psi(op, {1e-12}).psi), 1.0, 1e-6);
}

TEST(SolverProperties, EntriesStayInUnitInterval) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto g = random_digraph(50, 0.1, seed);
        const auto act = random_uniform(50, seed + 3);
        const PsiOperator op(g, act);
        for (double v : power_psi(op, {1e-12}).psi) {
            EXPECT_GE(v, 0.0);
            EXPECT_LE(v, 1.0);
        }
        for (const auto& w : all_newsfeed_walls(op, {1e-12})) {
            for (double v : w.p) {
                EXPECT_GE(v, 0.0);
                EXPECT_LE(v, 1.0);
            }
            for (double v : w.q) {
                EXPECT_GE(v, 0.0);
                EXPECT_LE(v, 1.0);
            }
        }
        for (double v : pagerank_power(g, 0.85, {1e-12}).psi) EXPECT_GE(v, 0.0);
    }
}

TEST(SolverProperties, RunsAreReproducible) {
    const auto g = random_digraph(150, 0.05, 77);
    const auto act = random_uniform(150, 77);
    const PsiOperator op(g, act);
    const auto a = power_psi(op, {1e-9}), b = power_psi(op, {1e-9});
    EXPECT_EQ(a.psi, b.psi);
    EXPECT_EQ(a.matvec_count, b.matvec_count);
    const auto c = psi_via_power_nf(op, {1e-6}), d = psi_via_power_nf(op, {1e-6});
    EXPECT_EQ(c.psi, d.psi);
    EXPECT_EQ(c.matvec_count, d.matvec_count);
}

}  // namespace
}  // namespace psiscore

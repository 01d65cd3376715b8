#include "psiscore/solvers.hpp"

#include <cmath>

#include <Eigen/Dense>
#include <fmt/format.h>

namespace psiscore {

std::vector<double> exact_psi(const PsiOperator& op, std::size_t dense_cap) {
    const DirectedGraph& g = op.graph();
    const auto& lambda = op.activity().lambda();
    const auto& mu = op.activity().mu();
    const auto n = static_cast<Eigen::Index>(g.num_nodes());
    if (g.num_nodes() > dense_cap) {
        throw CapacityError(fmt::format(
            "exact solve limited to {} nodes (graph has {}); use power-psi instead", dense_cap,
            g.num_nodes()));
    }

    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n, n);
    Eigen::VectorXd c(n), d(n);
    for (NodeIndex j = 0; j < n; ++j) {
        double r = 0.0;
        for (NodeIndex l : g.leaders_unchecked(j)) {
            r += lambda[l] + mu[l];
        }
        for (NodeIndex i : g.leaders_unchecked(j)) {
            a(j, i) = mu[i] / r;
            b(j, i) = lambda[i] / r;
        }
        c(j) = mu[j] / (lambda[j] + mu[j]);
        d(j) = lambda[j] / (lambda[j] + mu[j]);
    }

    // s^T (I - A) = c^T  <=>  (I - A)^T s = c
    const Eigen::MatrixXd system = Eigen::MatrixXd::Identity(n, n) - a.transpose();
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(system);
    const double rcond = lu.rcond();
    if (!(rcond > 1e-14)) {
        throw std::runtime_error(
            fmt::format("I - A is numerically singular (rcond = {}); A is not sub-stochastic",
                        rcond));
    }
    const Eigen::VectorXd s = lu.solve(c);
    const Eigen::VectorXd psi = (b.transpose() * s + d) / static_cast<double>(n);

    std::vector<double> out(psi.data(), psi.data() + n);
    for (double v : out) {
        if (!std::isfinite(v)) {
            throw std::runtime_error("exact solve produced a non-finite psi-score");
        }
    }
    return out;
}

}  // namespace psiscore

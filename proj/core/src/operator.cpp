#include "psiscore/operator.hpp"

#include <algorithm>
#include <stdexcept>

#include <fmt/format.h>

namespace psiscore {

PsiOperator::PsiOperator(const DirectedGraph& graph, const ActivityProfile& activity)
    : graph_(&graph), activity_(&activity) {
    const std::size_t n = graph.num_nodes();
    if (n == 0) {
        throw std::invalid_argument("operator needs a graph with at least one node");
    }
    if (activity.size() != n) {
        throw std::invalid_argument(fmt::format(
            "activity profile has {} entries but the graph has {} nodes", activity.size(), n));
    }
    const auto& lambda = activity.lambda();
    const auto& mu = activity.mu();

    denom_.assign(n, 0.0);
    inv_denom_.assign(n, 0.0);
    c_.resize(n);
    d_.resize(n);
    for (NodeIndex j = 0; j < n; ++j) {
        const double total = lambda[j] + mu[j];
        c_[j] = mu[j] / total;
        d_[j] = lambda[j] / total;

        double r = 0.0;
        double lambda_sum = 0.0;
        for (NodeIndex l : graph.leaders_unchecked(j)) {
            r += lambda[l] + mu[l];
            lambda_sum += lambda[l];
        }
        denom_[j] = r;
        if (r > 0.0) {
            inv_denom_[j] = 1.0 / r;
            b_norm_ = std::max(b_norm_, lambda_sum / r);
        }
    }
    for (NodeIndex i = 0; i < n; ++i) {
        double sum = 0.0;
        for (NodeIndex j : graph.followers_unchecked(i)) {
            sum += inv_denom_[j];
        }
        b_max_column_sum_ = std::max(b_max_column_sum_, lambda[i] * sum);
    }
}

void PsiOperator::check_size(std::size_t got, const char* what) const {
    if (got != size()) {
        throw std::invalid_argument(
            fmt::format("{} has length {}, operator dimension is {}", what, got, size()));
    }
}

void PsiOperator::apply_a_right(std::span<const double> p, std::span<double> out,
                                MatvecCounter& counter) const {
    check_size(p.size(), "input vector");
    check_size(out.size(), "output vector");
    const auto& mu = activity_->mu();
    for (NodeIndex j = 0; j < size(); ++j) {
        double acc = 0.0;
        for (NodeIndex i : graph_->leaders_unchecked(j)) {
            acc += mu[i] * p[i];
        }
        out[j] = acc * inv_denom_[j];
    }
    ++counter.a;
}

namespace {

// out_i = weight_i * sum_{j in followers(i)} s_j / r_j
void left_product(const DirectedGraph& g, const std::vector<double>& inv_denom,
                  const std::vector<double>& weight, std::span<const double> s,
                  std::span<double> out) {
    for (NodeIndex i = 0; i < s.size(); ++i) {
        double acc = 0.0;
        for (NodeIndex j : g.followers_unchecked(i)) {
            acc += s[j] * inv_denom[j];
        }
        out[i] = weight[i] * acc;
    }
}

}  // namespace

void PsiOperator::apply_a_left(std::span<const double> s, std::span<double> out,
                               MatvecCounter& counter) const {
    check_size(s.size(), "input vector");
    check_size(out.size(), "output vector");
    left_product(*graph_, inv_denom_, activity_->mu(), s, out);
    ++counter.a;
}

void PsiOperator::apply_b_left(std::span<const double> s, std::span<double> out,
                               MatvecCounter& counter) const {
    check_size(s.size(), "input vector");
    check_size(out.size(), "output vector");
    left_product(*graph_, inv_denom_, activity_->lambda(), s, out);
    ++counter.b;
}

std::vector<double> PsiOperator::apply_a_right(std::span<const double> p,
                                               MatvecCounter& counter) const {
    std::vector<double> out(size());
    apply_a_right(p, out, counter);
    return out;
}

std::vector<double> PsiOperator::apply_a_left(std::span<const double> s,
                                              MatvecCounter& counter) const {
    std::vector<double> out(size());
    apply_a_left(s, out, counter);
    return out;
}

std::vector<double> PsiOperator::apply_b_left(std::span<const double> s,
                                              MatvecCounter& counter) const {
    std::vector<double> out(size());
    apply_b_left(s, out, counter);
    return out;
}

std::vector<SparseEntry> PsiOperator::b_column(NodeIndex i) const {
    const auto followers = graph_->followers(i);
    const double lambda_i = activity_->lambda()[i];
    std::vector<SparseEntry> column;
    column.reserve(followers.size());
    for (NodeIndex j : followers) {
        column.push_back({j, lambda_i * inv_denom_[j]});
    }
    return column;
}

}  // namespace psiscore

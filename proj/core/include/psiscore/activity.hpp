#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "psiscore/graph.hpp"

namespace psiscore {

/// Per-node posting rate (lambda) and re-posting rate (mu).
///
/// Invariant: both vectors have the same length, every rate is finite and
/// non-negative, and lambda[n] + mu[n] > 0 for every node.
class ActivityProfile {
public:
    ActivityProfile() = default;

    /// Validates and takes ownership. Throws std::invalid_argument.
    ActivityProfile(std::vector<double> lambda, std::vector<double> mu);

    std::size_t size() const noexcept { return lambda_.size(); }
    const std::vector<double>& lambda() const noexcept { return lambda_; }
    const std::vector<double>& mu() const noexcept { return mu_; }

    /// True when all nodes share the same (lambda, mu).
    bool is_homogeneous() const noexcept;

    bool operator==(const ActivityProfile&) const = default;

private:
    std::vector<double> lambda_;
    std::vector<double> mu_;
};

/// Constant rates on `n` nodes.
ActivityProfile homogeneous(std::size_t n, double lambda, double mu);

/// Independent draws of lambda and mu from the open interval (0, 1).
/// Bit-for-bit reproducible for a given seed on every platform.
ActivityProfile random_uniform(std::size_t n, std::uint64_t seed);

/// Reads "label,lambda,mu" lines and aligns them to the graph's dense
/// indices. An optional "label,lambda,mu" header and '#' comments are
/// skipped. Every node of `g` must appear exactly once.
ActivityProfile load_activity(std::istream& in, const DirectedGraph& g);
ActivityProfile load_activity_file(const std::string& path, const DirectedGraph& g);

/// Writes a header and one "label,lambda,mu" line per node in index order,
/// with 17 significant digits so a reload reproduces the doubles exactly.
void save_activity(const ActivityProfile& profile, const std::vector<NodeLabel>& labels,
                   std::ostream& out);

}  // namespace psiscore

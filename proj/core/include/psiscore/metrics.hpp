#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "psiscore/graph.hpp"

namespace psiscore {

/// ||truth - approx||_2 / ||truth||_2. Normalised by the first argument only.
/// Throws std::invalid_argument on length mismatch or an all-zero `truth`.
double relative_error(std::span<const double> truth, std::span<const double> approx);

struct RankedNode {
    NodeLabel label;
    double score;
    std::size_t rank;  // 1-based position

    bool operator==(const RankedNode&) const = default;
};

/// Orders nodes by descending score, ties by ascending label.
/// Throws std::invalid_argument on NaN or a length mismatch.
std::vector<RankedNode> rank_vector(std::span<const double> scores,
                                    std::span<const NodeLabel> labels);

/// "label,psi,rank" with a header line; scores use 17 significant digits.
void write_ranking_csv(std::span<const RankedNode> ranking, std::ostream& out);

}  // namespace psiscore

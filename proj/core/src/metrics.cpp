#include "psiscore/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include <fmt/format.h>

namespace psiscore {

double relative_error(std::span<const double> truth, std::span<const double> approx) {
    if (truth.size() != approx.size()) {
        throw std::invalid_argument(fmt::format("relative_error: lengths differ ({} vs {})",
                                                truth.size(), approx.size()));
    }
    double diff2 = 0.0, norm2 = 0.0;
    for (std::size_t k = 0; k < truth.size(); ++k) {
        const double e = truth[k] - approx[k];
        diff2 += e * e;
        norm2 += truth[k] * truth[k];
    }
    if (!(norm2 > 0.0)) {
        throw std::invalid_argument("relative_error: reference vector has zero norm");
    }
    return std::sqrt(diff2) / std::sqrt(norm2);
}

std::vector<RankedNode> rank_vector(std::span<const double> scores,
                                    std::span<const NodeLabel> labels) {
    if (scores.size() != labels.size()) {
        throw std::invalid_argument("rank_vector: scores and labels differ in length");
    }
    for (std::size_t k = 0; k < scores.size(); ++k) {
        if (std::isnan(scores[k])) {
            throw std::invalid_argument(
                fmt::format("rank_vector: score of node label {} is NaN", labels[k]));
        }
    }
    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (scores[a] != scores[b]) return scores[a] > scores[b];
        return labels[a] < labels[b];
    });
    std::vector<RankedNode> ranking;
    ranking.reserve(order.size());
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
        ranking.push_back({labels[order[pos]], scores[order[pos]], pos + 1});
    }
    return ranking;
}

void write_ranking_csv(std::span<const RankedNode> ranking, std::ostream& out) {
    out << "label,psi,rank\n";
    for (const auto& r : ranking) {
        out << fmt::format("{},{:.17g},{}\n", r.label, r.score, r.rank);
    }
}

}  // namespace psiscore

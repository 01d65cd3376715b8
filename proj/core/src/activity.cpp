#include "psiscore/activity.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <string_view>

#include <fmt/format.h>

namespace psiscore {

ActivityProfile::ActivityProfile(std::vector<double> lambda, std::vector<double> mu)
    : lambda_(std::move(lambda)), mu_(std::move(mu)) {
    if (lambda_.size() != mu_.size()) {
        throw std::invalid_argument(fmt::format("lambda has {} entries but mu has {}",
                                                lambda_.size(), mu_.size()));
    }
    for (std::size_t n = 0; n < lambda_.size(); ++n) {
        const double l = lambda_[n], m = mu_[n];
        if (!std::isfinite(l) || !std::isfinite(m) || l < 0.0 || m < 0.0) {
            throw std::invalid_argument(
                fmt::format("node {}: rates must be finite and non-negative (lambda={}, mu={})",
                            n, l, m));
        }
        if (!(l + m > 0.0)) {
            throw std::invalid_argument(fmt::format("node {}: lambda + mu must be positive", n));
        }
    }
}

bool ActivityProfile::is_homogeneous() const noexcept {
    for (std::size_t n = 1; n < lambda_.size(); ++n) {
        if (lambda_[n] != lambda_[0] || mu_[n] != mu_[0]) {
            return false;
        }
    }
    return true;
}

ActivityProfile homogeneous(std::size_t n, double lambda, double mu) {
    if (n == 0) {
        throw std::invalid_argument("activity profile needs at least one node");
    }
    return ActivityProfile(std::vector<double>(n, lambda), std::vector<double>(n, mu));
}

namespace {

// 53 random mantissa bits mapped to [0, 1); zero is redrawn.
double open_unit(std::mt19937_64& rng) {
    for (;;) {
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        if (u > 0.0) {
            return u;
        }
    }
}

double parse_rate(std::string_view field, std::size_t line_no, const char* name) {
    while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) field.remove_prefix(1);
    while (!field.empty() && (field.back() == ' ' || field.back() == '\t' || field.back() == '\r'))
        field.remove_suffix(1);
    double value = 0.0;
    const auto* end = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(field.data(), end, value);
    if (ec != std::errc() || ptr != end || field.empty()) {
        throw ParseError(fmt::format("malformed {} value '{}'", name, field), line_no);
    }
    return value;
}

}  // namespace

ActivityProfile random_uniform(std::size_t n, std::uint64_t seed) {
    if (n == 0) {
        throw std::invalid_argument("activity profile needs at least one node");
    }
    std::mt19937_64 rng(seed);
    std::vector<double> lambda(n), mu(n);
    for (std::size_t k = 0; k < n; ++k) {
        lambda[k] = open_unit(rng);
        mu[k] = open_unit(rng);
    }
    return ActivityProfile(std::move(lambda), std::move(mu));
}

ActivityProfile load_activity(std::istream& in, const DirectedGraph& g) {
    const std::size_t n = g.num_nodes();
    std::vector<double> lambda(n), mu(n);
    std::vector<bool> seen(n, false);

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view(line);
        const auto first = view.find_first_not_of(" \t\r");
        if (first == std::string_view::npos || view[first] == '#') {
            continue;
        }
        if (view.substr(first).starts_with("label")) {
            continue;
        }
        const auto c1 = view.find(',');
        const auto c2 = c1 == std::string_view::npos ? c1 : view.find(',', c1 + 1);
        if (c2 == std::string_view::npos || view.find(',', c2 + 1) != std::string_view::npos) {
            throw ParseError("expected 'label,lambda,mu'", line_no);
        }
        std::string_view label_text = view.substr(0, c1);
        while (!label_text.empty() && (label_text.front() == ' ' || label_text.front() == '\t'))
            label_text.remove_prefix(1);
        while (!label_text.empty() && (label_text.back() == ' ' || label_text.back() == '\t'))
            label_text.remove_suffix(1);
        NodeLabel label = 0;
        {
            const auto* end = label_text.data() + label_text.size();
            auto [ptr, ec] = std::from_chars(label_text.data(), end, label);
            if (ec != std::errc() || ptr != end || label_text.empty()) {
                throw ParseError(fmt::format("malformed node label '{}'", label_text), line_no);
            }
        }
        const double l = parse_rate(view.substr(c1 + 1, c2 - c1 - 1), line_no, "lambda");
        const double m = parse_rate(view.substr(c2 + 1), line_no, "mu");

        const auto index = g.find_label(label);
        if (!index) {
            throw ParseError(fmt::format("unknown node label {}", label), line_no);
        }
        if (seen[*index]) {
            throw ParseError(fmt::format("node label {} listed twice", label), line_no);
        }
        if (!std::isfinite(l) || !std::isfinite(m) || l < 0.0 || m < 0.0 || !(l + m > 0.0)) {
            throw ParseError(
                fmt::format("node label {}: rates must be non-negative with positive sum", label),
                line_no);
        }
        seen[*index] = true;
        lambda[*index] = l;
        mu[*index] = m;
    }
    for (std::size_t k = 0; k < n; ++k) {
        if (!seen[k]) {
            const NodeLabel label = g.label(static_cast<NodeIndex>(k));
            throw ParseError(fmt::format("missing activity for node label {}", label), 0);
        }
    }
    return ActivityProfile(std::move(lambda), std::move(mu));
}

ActivityProfile load_activity_file(const std::string& path, const DirectedGraph& g) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error(fmt::format("cannot open activity file '{}'", path));
    }
    return load_activity(in, g);
}

void save_activity(const ActivityProfile& profile, const std::vector<NodeLabel>& labels,
                   std::ostream& out) {
    if (labels.size() != profile.size()) {
        throw std::invalid_argument("label count does not match activity profile");
    }
    out << "label,lambda,mu\n";
    for (std::size_t k = 0; k < profile.size(); ++k) {
        out << fmt::format("{},{:.17g},{:.17g}\n", labels[k], profile.lambda()[k],
                           profile.mu()[k]);
    }
}

}  // namespace psiscore

#include "psiscore/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>

#include <fmt/format.h>

namespace psiscore {

ParseError::ParseError(const std::string& what, std::size_t line)
    : std::runtime_error(line > 0 ? fmt::format("line {}: {}", line, what) : what), line_(line) {}

namespace {

void build_csr(std::size_t n, const std::vector<std::pair<NodeIndex, NodeIndex>>& sorted_edges,
               bool by_first, std::vector<std::size_t>& off, std::vector<NodeIndex>& idx) {
    off.assign(n + 1, 0);
    idx.resize(sorted_edges.size());
    for (const auto& [u, v] : sorted_edges) {
        ++off[(by_first ? u : v) + 1];
    }
    for (std::size_t k = 0; k < n; ++k) {
        off[k + 1] += off[k];
    }
    std::vector<std::size_t> cursor(off.begin(), off.end() - 1);
    for (const auto& [u, v] : sorted_edges) {
        if (by_first) {
            idx[cursor[u]++] = v;
        } else {
            idx[cursor[v]++] = u;
        }
    }
    // Input is sorted by (u, v); the follower side needs its own sort.
    if (!by_first) {
        for (std::size_t k = 0; k < n; ++k) {
            std::sort(idx.begin() + static_cast<std::ptrdiff_t>(off[k]),
                      idx.begin() + static_cast<std::ptrdiff_t>(off[k + 1]));
        }
    }
}

bool is_comment_or_blank(std::string_view line) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return true;
    }
    return line[first] == '%' || line[first] == '#';
}

NodeLabel parse_label(std::string_view token, std::size_t line_no) {
    NodeLabel value = 0;
    const auto* end = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(token.data(), end, value);
    if (ec != std::errc() || ptr != end) {
        throw ParseError(fmt::format("invalid node label '{}'", token), line_no);
    }
    return value;
}

}  // namespace

DirectedGraph DirectedGraph::from_edges(std::size_t num_nodes,
                                        std::span<const std::pair<NodeIndex, NodeIndex>> edges,
                                        std::vector<NodeLabel> labels) {
    if (labels.empty()) {
        labels.resize(num_nodes);
        for (std::size_t k = 0; k < num_nodes; ++k) {
            labels[k] = static_cast<NodeLabel>(k);
        }
    }
    if (labels.size() != num_nodes) {
        throw std::invalid_argument(
            fmt::format("label count {} does not match node count {}", labels.size(), num_nodes));
    }

    DirectedGraph g;
    std::vector<std::pair<NodeIndex, NodeIndex>> kept;
    kept.reserve(edges.size());
    for (const auto& [u, v] : edges) {
        if (u >= num_nodes || v >= num_nodes) {
            throw std::out_of_range(fmt::format("edge ({}, {}) out of range for {} nodes", u, v,
                                                num_nodes));
        }
        if (u == v) {
            ++g.dropped_self_loops_;
            continue;
        }
        kept.emplace_back(u, v);
    }
    std::sort(kept.begin(), kept.end());
    const auto unique_end = std::unique(kept.begin(), kept.end());
    g.dropped_duplicates_ = static_cast<std::size_t>(kept.end() - unique_end);
    kept.erase(unique_end, kept.end());

    build_csr(num_nodes, kept, true, g.leader_off_, g.leader_idx_);
    build_csr(num_nodes, kept, false, g.follower_off_, g.follower_idx_);

    g.labels_ = std::move(labels);
    g.index_of_.reserve(num_nodes);
    for (std::size_t k = 0; k < num_nodes; ++k) {
        if (!g.index_of_.emplace(g.labels_[k], static_cast<NodeIndex>(k)).second) {
            throw std::invalid_argument(fmt::format("duplicate node label {}", g.labels_[k]));
        }
    }
    return g;
}

std::span<const NodeIndex> DirectedGraph::leaders(NodeIndex j) const {
    if (j >= num_nodes()) {
        throw std::out_of_range(fmt::format("node index {} out of range [0, {})", j, num_nodes()));
    }
    return leaders_unchecked(j);
}

std::span<const NodeIndex> DirectedGraph::followers(NodeIndex i) const {
    if (i >= num_nodes()) {
        throw std::out_of_range(fmt::format("node index {} out of range [0, {})", i, num_nodes()));
    }
    return followers_unchecked(i);
}

std::optional<NodeIndex> DirectedGraph::find_label(NodeLabel label) const {
    const auto it = index_of_.find(label);
    if (it == index_of_.end()) {
        return std::nullopt;
    }
    return it->second;
}

bool DirectedGraph::every_node_has_leader() const noexcept {
    for (std::size_t j = 0; j < num_nodes(); ++j) {
        if (leader_off_[j + 1] == leader_off_[j]) {
            return false;
        }
    }
    return true;
}

DirectedGraph parse_edge_list(std::istream& in) {
    std::vector<NodeLabel> labels;
    std::unordered_map<NodeLabel, NodeIndex> index_of;
    std::vector<std::pair<NodeIndex, NodeIndex>> edges;

    auto intern = [&](NodeLabel label) {
        auto [it, inserted] = index_of.try_emplace(label, static_cast<NodeIndex>(labels.size()));
        if (inserted) {
            labels.push_back(label);
        }
        return it->second;
    };

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (is_comment_or_blank(line)) {
            continue;
        }
        std::string_view rest(line);
        std::string_view tokens[3];
        std::size_t count = 0;
        while (count < 3) {
            const auto begin = rest.find_first_not_of(" \t\r");
            if (begin == std::string_view::npos) {
                break;
            }
            rest.remove_prefix(begin);
            const auto end = std::min(rest.find_first_of(" \t\r"), rest.size());
            tokens[count++] = rest.substr(0, end);
            rest.remove_prefix(end);
        }
        if (count != 2) {
            throw ParseError(fmt::format("expected exactly two node labels, got {}",
                                         count == 3 ? "more" : std::to_string(count)),
                             line_no);
        }
        const NodeLabel src = parse_label(tokens[0], line_no);
        const NodeLabel dst = parse_label(tokens[1], line_no);
        const NodeIndex u = intern(src);
        const NodeIndex v = intern(dst);
        edges.emplace_back(u, v);
    }
    if (in.bad()) {
        throw std::runtime_error("read error while parsing edge list");
    }
    if (edges.empty()) {
        throw ParseError("edge list contains no edges", 0);
    }
    const std::size_t n = labels.size();
    return DirectedGraph::from_edges(n, edges, std::move(labels));
}

DirectedGraph load_edge_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error(fmt::format("cannot open edge list '{}'", path));
    }
    return parse_edge_list(in);
}

void write_edge_list(const DirectedGraph& g, std::ostream& out) {
    // Order lines so a re-parse assigns the same first-seen indices: group by
    // the larger endpoint, larger lower endpoint first, follower-is-lower first.
    struct Line {
        NodeIndex src, dst;
    };
    std::vector<Line> lines;
    lines.reserve(g.num_edges());
    for (NodeIndex j = 0; j < g.num_nodes(); ++j) {
        for (NodeIndex k : g.leaders_unchecked(j)) {
            lines.push_back({j, k});
        }
    }
    std::sort(lines.begin(), lines.end(), [](const Line& a, const Line& b) {
        const auto a_hi = std::max(a.src, a.dst), b_hi = std::max(b.src, b.dst);
        if (a_hi != b_hi) return a_hi < b_hi;
        const auto a_lo = std::min(a.src, a.dst), b_lo = std::min(b.src, b.dst);
        if (a_lo != b_lo) return a_lo > b_lo;
        return (a.src == a_lo) > (b.src == b_lo);
    });
    // A node that no line would introduce at its index (isolated, or first seen
    // through a dropped self-loop) is pinned with a self-loop line of its own.
    NodeIndex next = 0;
    auto introduce = [&](NodeIndex v) {
        for (; next <= v; ++next) {
            if (next != v) out << g.label(next) << ' ' << g.label(next) << '\n';
        }
    };
    for (const auto& l : lines) {
        if (l.src >= next) introduce(l.src);
        if (l.dst >= next) introduce(l.dst);
        out << g.label(l.src) << ' ' << g.label(l.dst) << '\n';
    }
    for (; next < g.num_nodes(); ++next) out << g.label(next) << ' ' << g.label(next) << '\n';
}

}  // namespace psiscore

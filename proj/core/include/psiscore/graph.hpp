#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace psiscore {

using NodeIndex = std::uint32_t;
using NodeLabel = std::int64_t;

/// Raised on malformed edge-list or activity input. Carries the 1-based
/// line number of the offending line (0 when the error is not tied to a line).
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line);

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Immutable follower -> leader topology.
///
/// An edge (i, j) means user i follows user j, so j is a leader of i and i is
/// a follower of j. Both directions are stored in CSR form with sorted,
/// duplicate-free rows and no self-loops.
class DirectedGraph {
public:
    DirectedGraph() = default;

    /// Builds from dense-index edges. Self-loops and duplicates are dropped.
    /// `labels[k]` is the original label of dense index k; when empty, labels
    /// default to the indices themselves.
    static DirectedGraph from_edges(std::size_t num_nodes,
                                    std::span<const std::pair<NodeIndex, NodeIndex>> edges,
                                    std::vector<NodeLabel> labels = {});

    std::size_t num_nodes() const noexcept { return labels_.size(); }
    std::size_t num_edges() const noexcept { return leader_idx_.size(); }

    /// Nodes that `j` follows. Throws std::out_of_range.
    std::span<const NodeIndex> leaders(NodeIndex j) const;
    /// Nodes that follow `i`. Throws std::out_of_range.
    std::span<const NodeIndex> followers(NodeIndex i) const;

    // Unchecked variants for the inner loops of the operator.
    std::span<const NodeIndex> leaders_unchecked(NodeIndex j) const noexcept {
        return {leader_idx_.data() + leader_off_[j], leader_idx_.data() + leader_off_[j + 1]};
    }
    std::span<const NodeIndex> followers_unchecked(NodeIndex i) const noexcept {
        return {follower_idx_.data() + follower_off_[i],
                follower_idx_.data() + follower_off_[i + 1]};
    }

    std::size_t out_degree(NodeIndex j) const { return leaders(j).size(); }
    std::size_t in_degree(NodeIndex i) const { return followers(i).size(); }

    NodeLabel label(NodeIndex k) const { return labels_.at(k); }
    const std::vector<NodeLabel>& labels() const noexcept { return labels_; }

    /// Dense index of an original label.
    std::optional<NodeIndex> find_label(NodeLabel label) const;

    /// True when every node follows at least one other node.
    bool every_node_has_leader() const noexcept;

    // Number of entries dropped while building.
    std::size_t dropped_self_loops() const noexcept { return dropped_self_loops_; }
    std::size_t dropped_duplicates() const noexcept { return dropped_duplicates_; }

private:
    std::vector<std::size_t> leader_off_{0};
    std::vector<NodeIndex> leader_idx_;
    std::vector<std::size_t> follower_off_{0};
    std::vector<NodeIndex> follower_idx_;
    std::vector<NodeLabel> labels_;
    std::unordered_map<NodeLabel, NodeIndex> index_of_;
    std::size_t dropped_self_loops_ = 0;
    std::size_t dropped_duplicates_ = 0;
};

/// Reads a whitespace-separated "src dst" edge list (src follows dst).
/// Lines starting with '%' or '#' and blank lines are skipped. Labels are
/// arbitrary integers, mapped to dense indices in first-seen order.
DirectedGraph parse_edge_list(std::istream& in);

/// Opens `path` and parses it. Throws std::runtime_error if it cannot be read.
DirectedGraph load_edge_list(const std::string& path);

/// Writes "src dst" lines in original labels, ordered so that parse(write(g))
/// reproduces the same index assignment. Nodes no edge would place correctly
/// are written as self-loops, which the parser drops after assigning an index.
void write_edge_list(const DirectedGraph& g, std::ostream& out);

}  // namespace psiscore

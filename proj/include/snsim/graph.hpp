#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace snsim {

using NodeId = std::uint32_t;

enum class NodeState : std::uint8_t { Exclusive = 0, Dual = 1 };

/// Undirected social graph of the incumbent site. Immutable after
/// construction: symmetric adjacency, no self-loops, no parallel edges,
/// neighbor lists sorted ascending. Safe for concurrent reads.
class Graph {
public:
    Graph() = default;

    /// Build from already-dense node ids in [0, node_count). Self-loops are
    /// dropped and parallel edges collapsed; ids out of range throw.
    static Graph from_edges(std::size_t node_count,
                            const std::vector<std::pair<NodeId, NodeId>>& edges);

    std::size_t node_count() const { return adjacency_.size(); }
    std::size_t edge_count() const { return edge_count_; }

    std::span<const NodeId> neighbors(NodeId node) const;
    std::size_t degree(NodeId node) const { return neighbors(node).size(); }

    /// Original file id of a dense node id.
    std::uint64_t external_id(NodeId node) const;
    const std::vector<std::uint64_t>& external_ids() const { return external_ids_; }

private:
    std::vector<std::vector<NodeId>> adjacency_;
    std::vector<std::uint64_t> external_ids_;
    std::size_t edge_count_ = 0;

    friend Graph load_edge_list(std::string_view, struct IngestStats*);
};

/// What the loader dropped or collapsed, reported alongside the graph.
struct IngestStats {
    std::size_t lines_parsed = 0;
    std::size_t edges_kept = 0;
    std::size_t self_loops_dropped = 0;
    std::size_t duplicates_collapsed = 0;
};

/// Parse a line-oriented edge list ('#' comments, two integer columns,
/// LF or CRLF). Input is treated as undirected; ids are remapped densely
/// in first-appearance order. Malformed lines raise ParseError with the
/// line number; empty input yields an empty graph.
Graph load_edge_list(std::string_view text, IngestStats* stats = nullptr);

struct NeighborPartition {
    std::uint32_t degree = 0;          // d
    std::uint32_t exclusive_count = 0; // neighbors still only on the old site
    std::uint32_t dual_count = 0;      // neighbors using both sites
};

/// Split a node's neighborhood by adoption state. degree is always
/// exclusive_count + dual_count.
NeighborPartition neighbor_partition(const Graph& graph,
                                     const std::vector<NodeState>& states,
                                     NodeId node);

} // namespace snsim

#include "snsim/graph.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "snsim/errors.hpp"
#include "snsim/util.hpp"

namespace snsim {

namespace {

std::uint64_t parse_id_token(std::string_view token, std::size_t line_no) {
    std::uint64_t value = 0;
    auto res = std::from_chars(token.data(), token.data() + token.size(), value);
    if (res.ec != std::errc{} || res.ptr != token.data() + token.size()) {
        throw ParseError(line_no, "expected a non-negative integer, got '" +
                                      std::string(token) + "'");
    }
    return value;
}

} // namespace

Graph Graph::from_edges(std::size_t node_count,
                        const std::vector<std::pair<NodeId, NodeId>>& edges) {
    Graph g;
    g.adjacency_.resize(node_count);
    g.external_ids_.resize(node_count);
    for (std::size_t i = 0; i < node_count; ++i) g.external_ids_[i] = i;

    std::set<std::pair<NodeId, NodeId>> unique;
    for (auto [u, v] : edges) {
        if (u >= node_count || v >= node_count)
            throw std::out_of_range("edge endpoint out of range");
        if (u == v) continue;
        unique.insert({std::min(u, v), std::max(u, v)});
    }
    for (auto [u, v] : unique) {
        g.adjacency_[u].push_back(v);
        g.adjacency_[v].push_back(u);
    }
    for (auto& list : g.adjacency_) std::sort(list.begin(), list.end());
    g.edge_count_ = unique.size();
    return g;
}

std::span<const NodeId> Graph::neighbors(NodeId node) const {
    if (node >= adjacency_.size())
        throw std::out_of_range("node id " + std::to_string(node) +
                                " out of range (n=" +
                                std::to_string(adjacency_.size()) + ")");
    return adjacency_[node];
}

std::uint64_t Graph::external_id(NodeId node) const {
    if (node >= external_ids_.size())
        throw std::out_of_range("node id " + std::to_string(node) + " out of range");
    return external_ids_[node];
}

Graph load_edge_list(std::string_view text, IngestStats* stats) {
    Graph g;
    IngestStats local;

    std::unordered_map<std::uint64_t, NodeId> dense_of;
    auto intern = [&](std::uint64_t original) -> NodeId {
        auto [it, inserted] =
            dense_of.try_emplace(original, static_cast<NodeId>(g.external_ids_.size()));
        if (inserted) {
            g.external_ids_.push_back(original);
            g.adjacency_.emplace_back();
        }
        return it->second;
    };

    std::set<std::pair<NodeId, NodeId>> unique;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view raw = (eol == std::string_view::npos)
                                   ? text.substr(pos)
                                   : text.substr(pos, eol - pos);
        pos = (eol == std::string_view::npos) ? text.size() + 1 : eol + 1;
        ++line_no;

        std::string_view line = trim(raw);
        if (line.empty() || line.front() == '#') continue;

        // split on runs of spaces/tabs
        std::vector<std::string_view> tokens;
        std::size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
            std::size_t start = i;
            while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
            if (i > start) tokens.push_back(line.substr(start, i - start));
        }
        if (tokens.size() != 2)
            throw ParseError(line_no, "expected two integer tokens, got " +
                                          std::to_string(tokens.size()));

        ++local.lines_parsed;
        NodeId u = intern(parse_id_token(tokens[0], line_no));
        NodeId v = intern(parse_id_token(tokens[1], line_no));
        if (u == v) {
            ++local.self_loops_dropped;
            continue;
        }
        auto inserted = unique.insert({std::min(u, v), std::max(u, v)});
        if (!inserted.second) ++local.duplicates_collapsed;
    }

    for (auto [u, v] : unique) {
        g.adjacency_[u].push_back(v);
        g.adjacency_[v].push_back(u);
    }
    for (auto& list : g.adjacency_) std::sort(list.begin(), list.end());
    g.edge_count_ = unique.size();
    local.edges_kept = unique.size();
    if (stats) *stats = local;
    return g;
}

NeighborPartition neighbor_partition(const Graph& graph,
                                     const std::vector<NodeState>& states,
                                     NodeId node) {
    if (states.size() != graph.node_count())
        throw std::invalid_argument("state vector length does not match node count");
    NeighborPartition part;
    auto nbrs = graph.neighbors(node); // bounds-checked
    part.degree = static_cast<std::uint32_t>(nbrs.size());
    for (NodeId v : nbrs)
        if (states[v] == NodeState::Dual) ++part.dual_count;
    part.exclusive_count = part.degree - part.dual_count;
    return part;
}

} // namespace snsim

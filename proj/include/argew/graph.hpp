#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace argew {

using NodeId = std::uint32_t;

struct WeightedEdge {
    NodeId u = 0;
    NodeId v = 0;
    double weight = 0.0;
};

// An edge (u,v) is Tight when its weight reaches the larger of the two
// endpoints' average incident weights, Loose otherwise. Node pairs that are
// not edges count as Loose (weight 0).
enum class EdgeTightness { Loose, Tight };

// Weight summary for a graph. median_weight is the median of the per-edge
// weight multiset (each undirected edge counted once, duplicates preserved).
struct WeightStats {
    double min_weight = 0.0;
    double max_weight = 0.0;
    double median_weight = 0.0;
    std::vector<double> avg_weight_per_node;
};

// Immutable undirected graph with strictly positive edge weights and dense
// node ids 0..n-1. Neighbor lists are sorted by node id. All queries are
// const and safe for concurrent reads.
class WeightedGraph {
public:
    struct Neighbor {
        NodeId id;
        double weight;
    };

    WeightedGraph() = default;

    std::size_t node_count() const { return avg_weight_.size(); }
    std::size_t edge_count() const { return edge_count_; }

    std::span<const Neighbor> neighbors(NodeId v) const;
    std::size_t degree(NodeId v) const;

    bool has_edge(NodeId u, NodeId v) const;
    // 0.0 when (u,v) is not an edge.
    double weight(NodeId u, NodeId v) const;

    // Mean weight over edges incident to u; 0.0 for isolated nodes.
    double avg_edge_weight(NodeId u) const;

    // Requires u != v; both ids valid.
    EdgeTightness tightness(NodeId u, NodeId v) const;

    // One entry per undirected edge, in (min endpoint, max endpoint) order.
    std::vector<double> edge_weights() const;

private:
    friend WeightedGraph build_graph(const std::vector<WeightedEdge>& edges);

    void check_node(NodeId v) const;

    std::vector<std::size_t> offsets_;   // size n+1
    std::vector<Neighbor> adjacency_;    // size 2m, grouped by source node
    std::vector<double> avg_weight_;     // size n
    std::size_t edge_count_ = 0;
};

// Builds the graph from an undirected edge list. Node count is 1 + the
// largest id mentioned; ids with no edges are valid isolated nodes.
// Duplicate mentions of an edge (either orientation) must agree exactly on
// the weight and collapse to one edge. Rejects self-loops and non-positive
// or non-finite weights.
WeightedGraph build_graph(const std::vector<WeightedEdge>& edges);

// Rejects graphs with no edges.
WeightStats weight_stats(const WeightedGraph& g);

}  // namespace argew

#include "argew/graph.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace argew {

namespace {

std::string edge_name(NodeId u, NodeId v) {
    return std::to_string(u) + "-" + std::to_string(v);
}

}  // namespace

void WeightedGraph::check_node(NodeId v) const {
    if (v >= node_count()) {
        throw std::out_of_range("node id " + std::to_string(v) + " out of range (graph has " +
                                std::to_string(node_count()) + " nodes)");
    }
}

std::span<const WeightedGraph::Neighbor> WeightedGraph::neighbors(NodeId v) const {
    check_node(v);
    return {adjacency_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
}

std::size_t WeightedGraph::degree(NodeId v) const {
    check_node(v);
    return offsets_[v + 1] - offsets_[v];
}

double WeightedGraph::weight(NodeId u, NodeId v) const {
    auto span = neighbors(u);
    check_node(v);
    auto it = std::lower_bound(span.begin(), span.end(), v,
                               [](const Neighbor& nb, NodeId id) { return nb.id < id; });
    if (it != span.end() && it->id == v) return it->weight;
    return 0.0;
}

bool WeightedGraph::has_edge(NodeId u, NodeId v) const { return weight(u, v) > 0.0; }

double WeightedGraph::avg_edge_weight(NodeId u) const {
    check_node(u);
    return avg_weight_[u];
}

EdgeTightness WeightedGraph::tightness(NodeId u, NodeId v) const {
    check_node(u);
    check_node(v);
    if (u == v) {
        throw std::invalid_argument("tightness is undefined for a node against itself (node " +
                                    std::to_string(u) + ")");
    }
    double w = weight(u, v);
    if (w == 0.0) return EdgeTightness::Loose;
    return w < std::max(avg_weight_[u], avg_weight_[v]) ? EdgeTightness::Loose
                                                        : EdgeTightness::Tight;
}

std::vector<double> WeightedGraph::edge_weights() const {
    std::vector<double> out;
    out.reserve(edge_count_);
    for (NodeId u = 0; u < node_count(); ++u) {
        for (const Neighbor& nb : neighbors(u)) {
            if (nb.id > u) out.push_back(nb.weight);
        }
    }
    return out;
}

WeightedGraph build_graph(const std::vector<WeightedEdge>& edges) {
    std::vector<WeightedEdge> norm;
    norm.reserve(edges.size());
    NodeId max_id = 0;
    for (const WeightedEdge& e : edges) {
        if (e.u == e.v) {
            throw std::invalid_argument("self-loop at node " + std::to_string(e.u));
        }
        if (!std::isfinite(e.weight) || e.weight <= 0.0) {
            throw std::invalid_argument("edge " + edge_name(e.u, e.v) +
                                        " must have a positive finite weight, got " +
                                        std::to_string(e.weight));
        }
        norm.push_back({std::min(e.u, e.v), std::max(e.u, e.v), e.weight});
        max_id = std::max({max_id, e.u, e.v});
    }

    std::sort(norm.begin(), norm.end(), [](const WeightedEdge& a, const WeightedEdge& b) {
        if (a.u != b.u) return a.u < b.u;
        if (a.v != b.v) return a.v < b.v;
        return a.weight < b.weight;
    });
    std::vector<WeightedEdge> uniq;
    uniq.reserve(norm.size());
    for (const WeightedEdge& e : norm) {
        if (!uniq.empty() && uniq.back().u == e.u && uniq.back().v == e.v) {
            if (uniq.back().weight != e.weight) {
                throw std::invalid_argument("conflicting weights for edge " + edge_name(e.u, e.v) +
                                            ": " + std::to_string(uniq.back().weight) + " vs " +
                                            std::to_string(e.weight));
            }
            continue;  // exact duplicate collapses
        }
        uniq.push_back(e);
    }

    WeightedGraph g;
    const std::size_t n = edges.empty() ? 0 : std::size_t(max_id) + 1;
    g.edge_count_ = uniq.size();
    g.offsets_.assign(n + 1, 0);
    for (const WeightedEdge& e : uniq) {
        ++g.offsets_[e.u + 1];
        ++g.offsets_[e.v + 1];
    }
    for (std::size_t i = 1; i <= n; ++i) g.offsets_[i] += g.offsets_[i - 1];

    g.adjacency_.resize(2 * uniq.size());
    std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    for (const WeightedEdge& e : uniq) {
        g.adjacency_[cursor[e.u]++] = {e.v, e.weight};
        g.adjacency_[cursor[e.v]++] = {e.u, e.weight};
    }
    for (std::size_t v = 0; v < n; ++v) {
        std::sort(g.adjacency_.begin() + g.offsets_[v], g.adjacency_.begin() + g.offsets_[v + 1],
                  [](const WeightedGraph::Neighbor& a, const WeightedGraph::Neighbor& b) {
                      return a.id < b.id;
                  });
    }

    g.avg_weight_.assign(n, 0.0);
    for (std::size_t v = 0; v < n; ++v) {
        const std::size_t deg = g.offsets_[v + 1] - g.offsets_[v];
        if (deg == 0) continue;
        double sum = 0.0;
        for (std::size_t i = g.offsets_[v]; i < g.offsets_[v + 1]; ++i) {
            sum += g.adjacency_[i].weight;
        }
        g.avg_weight_[v] = sum / double(deg);
    }
    return g;
}

WeightStats weight_stats(const WeightedGraph& g) {
    if (g.edge_count() == 0) {
        throw std::invalid_argument("weight statistics need a graph with at least one edge");
    }
    std::vector<double> w = g.edge_weights();
    std::sort(w.begin(), w.end());
    WeightStats stats;
    stats.min_weight = w.front();
    stats.max_weight = w.back();
    const std::size_t m = w.size();
    stats.median_weight = (m % 2 == 1) ? w[m / 2] : 0.5 * (w[m / 2 - 1] + w[m / 2]);
    stats.avg_weight_per_node.resize(g.node_count());
    for (NodeId v = 0; v < g.node_count(); ++v) {
        stats.avg_weight_per_node[v] = g.avg_edge_weight(v);
    }
    return stats;
}

}  // namespace argew

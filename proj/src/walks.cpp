#include "argew/walks.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "argew/rng.hpp"

namespace argew {

namespace {

void check_step_nodes(const WeightedGraph& g, std::optional<NodeId> prev, NodeId current) {
    if (g.degree(current) == 0) {
        throw std::invalid_argument("node " + std::to_string(current) +
                                    " has no neighbors to step to");
    }
    if (prev && !g.has_edge(*prev, current)) {
        throw std::invalid_argument("previous node " + std::to_string(*prev) +
                                    " is not a neighbor of node " + std::to_string(current));
    }
}

}  // namespace

void WalkConfig::validate() const {
    if (!(p > 0.0) || !std::isfinite(p)) throw std::invalid_argument("p must be positive");
    if (!(q > 0.0) || !std::isfinite(q)) throw std::invalid_argument("q must be positive");
    if (walk_length < 1) throw std::invalid_argument("walk_length must be at least 1");
    if (walks_per_node < 1) throw std::invalid_argument("walks_per_node must be at least 1");
    if (context_size < 2) throw std::invalid_argument("context_size must be at least 2");
}

TransitionWeights transition_weights_node2vec(const WeightedGraph& g, std::optional<NodeId> prev,
                                              NodeId current, const WalkConfig& params) {
    params.validate();
    check_step_nodes(g, prev, current);
    TransitionWeights out;
    out.reserve(g.degree(current));
    for (const auto& nb : g.neighbors(current)) {
        double bias = 1.0;
        if (prev) {
            if (nb.id == *prev) {
                bias = 1.0 / params.p;
            } else if (g.has_edge(*prev, nb.id)) {
                bias = 1.0;
            } else {
                bias = 1.0 / params.q;
            }
        }
        out.emplace_back(nb.id, bias * nb.weight);
    }
    return out;
}

TransitionWeights transition_weights_node2vecplus(const WeightedGraph& g,
                                                  std::optional<NodeId> prev, NodeId current,
                                                  const WalkConfig& params) {
    params.validate();
    check_step_nodes(g, prev, current);
    const double inv_q = 1.0 / params.q;
    TransitionWeights out;
    out.reserve(g.degree(current));
    for (const auto& nb : g.neighbors(current)) {
        double bias = 1.0;
        if (prev) {
            if (nb.id == *prev) {
                bias = 1.0 / params.p;
            } else if (g.tightness(*prev, nb.id) == EdgeTightness::Tight) {
                bias = 1.0;
            } else if (g.tightness(current, nb.id) == EdgeTightness::Loose) {
                bias = std::min(1.0, inv_q);
            } else {
                // Loose (prev, candidate) reached over a tight edge: blend
                // between the out-bias and 1 by how strongly the candidate
                // still connects back to prev. Non-edges contribute 0.
                const double back = g.weight(nb.id, *prev);
                const double denom =
                    std::max(g.avg_edge_weight(nb.id), g.avg_edge_weight(*prev));
                bias = inv_q + (1.0 - inv_q) * (back / denom);
            }
        }
        out.emplace_back(nb.id, bias * nb.weight);
    }
    return out;
}

TransitionWeights transition_weights(const WeightedGraph& g, std::optional<NodeId> prev,
                                     NodeId current, const WalkConfig& params) {
    return params.strategy == WalkStrategy::Node2vec
               ? transition_weights_node2vec(g, prev, current, params)
               : transition_weights_node2vecplus(g, prev, current, params);
}

NodeId sample_next(const WeightedGraph& g, std::optional<NodeId> prev, NodeId current,
                   const WalkConfig& params, std::mt19937_64& rng) {
    const TransitionWeights tw = transition_weights(g, prev, current, params);
    double total = 0.0;
    for (const auto& [id, w] : tw) total += w;
    std::uniform_real_distribution<double> dist(0.0, total);
    const double r = dist(rng);
    double acc = 0.0;
    for (const auto& [id, w] : tw) {
        acc += w;
        if (r < acc) return id;
    }
    return tw.back().first;  // guards against accumulated rounding
}

Walk sample_walk(const WeightedGraph& g, NodeId start, const WalkConfig& params,
                 std::mt19937_64& rng) {
    params.validate();
    if (start >= g.node_count()) {
        throw std::out_of_range("walk start node " + std::to_string(start) + " out of range");
    }
    Walk walk{start};
    if (g.degree(start) == 0) return walk;
    walk.reserve(std::size_t(params.walk_length));
    while (walk.size() < std::size_t(params.walk_length)) {
        std::optional<NodeId> prev;
        if (walk.size() >= 2) prev = walk[walk.size() - 2];
        walk.push_back(sample_next(g, prev, walk.back(), params, rng));
    }
    return walk;
}

std::vector<Walk> sample_walks(const WeightedGraph& g, const WalkConfig& params) {
    params.validate();
    std::vector<Walk> walks;
    walks.reserve(g.node_count() * std::size_t(params.walks_per_node));
    for (NodeId node = 0; node < g.node_count(); ++node) {
        for (int rep = 0; rep < params.walks_per_node; ++rep) {
            auto stream = rng::stream(params.seed, node, std::uint64_t(rep));
            walks.push_back(sample_walk(g, node, params, stream));
        }
    }
    return walks;
}

std::vector<Window> split_windows(const Walk& walk, int context_size) {
    if (context_size < 2) throw std::invalid_argument("context_size must be at least 2");
    std::vector<Window> windows;
    if (walk.size() < 2) return windows;
    const std::size_t c = std::size_t(context_size);
    if (walk.size() <= c) {
        windows.push_back(walk);
        return windows;
    }
    windows.reserve(walk.size() - c + 1);
    for (std::size_t i = 0; i + c <= walk.size(); ++i) {
        windows.emplace_back(walk.begin() + i, walk.begin() + i + c);
    }
    return windows;
}

std::vector<std::pair<NodeId, NodeId>> positive_pairs(const Window& window) {
    if (window.size() < 2) {
        throw std::invalid_argument("a window needs at least 2 nodes to form pairs");
    }
    std::vector<std::pair<NodeId, NodeId>> pairs;
    pairs.reserve(window.size() - 1);
    for (std::size_t i = 1; i < window.size(); ++i) {
        pairs.emplace_back(window.front(), window[i]);
    }
    return pairs;
}

}  // namespace argew

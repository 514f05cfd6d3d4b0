#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "argew/graph.hpp"

namespace argew {

enum class WalkStrategy { Node2vec, Node2vecPlus };

struct WalkConfig {
    WalkStrategy strategy = WalkStrategy::Node2vec;
    double p = 1.0;
    double q = 1.0;
    int walk_length = 80;
    int walks_per_node = 10;
    int context_size = 10;
    std::uint64_t seed = 0;

    // Throws std::invalid_argument on out-of-range fields
    // (p, q > 0; walk_length >= 1; walks_per_node >= 1; context_size >= 2).
    void validate() const;
};

using Walk = std::vector<NodeId>;
using Window = std::vector<NodeId>;

// Unnormalized transition weights from `current`, given the previously
// visited node (nullopt on a walk's first step). One entry per neighbor of
// `current`, in ascending neighbor id order. Requires `current` to have at
// least one neighbor, and `prev`, when present, to be one of them.
using TransitionWeights = std::vector<std::pair<NodeId, double>>;

// Classic second-order bias: returning to prev scales by 1/p, staying in
// prev's neighborhood keeps the raw weight, moving outward scales by 1/q.
// First step: raw edge weights.
TransitionWeights transition_weights_node2vec(const WeightedGraph& g, std::optional<NodeId> prev,
                                              NodeId current, const WalkConfig& params);

// Weight-aware variant: out-edges are scaled by 1/q only when they are loose
// (weight below both endpoints' neighborhood averages); loose prev-candidate
// pairs over a tight current-candidate edge interpolate between 1/q and 1
// by w(candidate, prev) / max of the two average incident weights.
TransitionWeights transition_weights_node2vecplus(const WeightedGraph& g,
                                                  std::optional<NodeId> prev, NodeId current,
                                                  const WalkConfig& params);

// Dispatches on params.strategy.
TransitionWeights transition_weights(const WeightedGraph& g, std::optional<NodeId> prev,
                                     NodeId current, const WalkConfig& params);

// One step: samples a neighbor of `current` with probability proportional to
// its transition weight.
NodeId sample_next(const WeightedGraph& g, std::optional<NodeId> prev, NodeId current,
                   const WalkConfig& params, std::mt19937_64& rng);

// Walk of params.walk_length nodes starting at `start`; an isolated start
// yields the single-node walk [start].
Walk sample_walk(const WeightedGraph& g, NodeId start, const WalkConfig& params,
                 std::mt19937_64& rng);

// walks_per_node walks from every node, grouped by start node (walk index
// node * walks_per_node + repetition). Each walk draws from an RNG stream
// derived from (params.seed, node, repetition), so any single walk can be
// reproduced in isolation.
std::vector<Walk> sample_walks(const WeightedGraph& g, const WalkConfig& params);

// All contiguous length-`context_size` windows (walk length - context_size
// + 1 of them). Walks shorter than the context size yield the whole walk as
// the single window; single-node walks yield nothing.
std::vector<Window> split_windows(const Walk& walk, int context_size);

// Skip-gram training pairs for one window: (first node, each later node).
// Requires at least 2 nodes.
std::vector<std::pair<NodeId, NodeId>> positive_pairs(const Window& window);

}  // namespace argew

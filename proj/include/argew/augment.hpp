#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "argew/graph.hpp"
#include "argew/walks.hpp"

namespace argew {

// Affine min-max map from observed edge weights onto [low, high].
struct RescaleSpec {
    double low = 1.0;
    double high = 9.0;
    double min_weight = 0.0;
    double max_weight = 0.0;
};

// rescale(x) = (x - min) / (max - min) * (high - low) + low; collapses to
// `low` when min == max. Rejects x outside [min_weight, max_weight] and
// specs with low > high or min_weight > max_weight.
double rescale_weight(double x, const RescaleSpec& spec);

// floor(2^rescale_weight(w)): how many extra copies a derived window gets.
// Rescaled exponents >= 63 overflow the counter and are rejected.
std::uint64_t augmentation_count(double substitute_weight, const RescaleSpec& spec);

struct Substitution {
    std::size_t position = 0;
    NodeId substitute = 0;
    double weight = 0.0;  // w(window[position], substitute)
};

// Heaviest common neighbor that can replace window[position] while keeping
// the window edge-valid: a neighbor of the replaced node that is also a
// neighbor of both flanking nodes (only one flank at the window edges).
// Ties break to the smallest node id. nullopt when no candidate exists.
std::optional<Substitution> find_substitute(const WeightedGraph& g, const Window& window,
                                            std::size_t position);

struct CorpusEntry {
    Window window;
    std::uint64_t count = 1;
};

// Multiset of training windows with multiplicities.
struct Corpus {
    std::vector<CorpusEntry> entries;

    std::uint64_t total_windows() const;
};

// Wraps plain windows as a corpus with count 1 each.
Corpus corpus_from_windows(std::vector<Window> windows);

// Median of the distinct edge weight values; the augmentation trigger
// threshold. Rejects graphs with no edges.
double distinct_weight_median(const WeightedGraph& g);

// Expands walk windows into an augmented corpus. Every window is kept once;
// each position whose best substitute weight strictly exceeds the distinct-
// weight median adds one more copy of the original window plus
// augmentation_count copies of the derived window (the original with that
// position replaced). Output order: original entry (with its accumulated
// count), then derived entries in position order. Windows must be edge-valid
// in g; the rescale range is [low, high] over the graph's weight extremes.
Corpus augment_corpus(const WeightedGraph& g, const std::vector<Window>& windows, double low,
                      double high);

}  // namespace argew

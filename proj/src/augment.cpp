#include "argew/augment.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace argew {

namespace {

void check_window(const WeightedGraph& g, const Window& window) {
    if (window.size() < 2) {
        throw std::invalid_argument("corpus windows need at least 2 nodes");
    }
    for (std::size_t i = 0; i + 1 < window.size(); ++i) {
        if (!g.has_edge(window[i], window[i + 1])) {
            throw std::invalid_argument("window is not edge-valid: no edge " +
                                        std::to_string(window[i]) + "-" +
                                        std::to_string(window[i + 1]));
        }
    }
}

}  // namespace

double rescale_weight(double x, const RescaleSpec& spec) {
    if (!(spec.low <= spec.high)) {
        throw std::invalid_argument("rescale range is empty: low " + std::to_string(spec.low) +
                                    " > high " + std::to_string(spec.high));
    }
    if (!(spec.min_weight <= spec.max_weight)) {
        throw std::invalid_argument("rescale domain is empty: min " +
                                    std::to_string(spec.min_weight) + " > max " +
                                    std::to_string(spec.max_weight));
    }
    if (x < spec.min_weight || x > spec.max_weight) {
        throw std::invalid_argument("value " + std::to_string(x) +
                                    " outside the rescale domain [" +
                                    std::to_string(spec.min_weight) + ", " +
                                    std::to_string(spec.max_weight) + "]");
    }
    if (spec.min_weight == spec.max_weight) return spec.low;
    return (x - spec.min_weight) / (spec.max_weight - spec.min_weight) * (spec.high - spec.low) +
           spec.low;
}

std::uint64_t augmentation_count(double substitute_weight, const RescaleSpec& spec) {
    const double r = rescale_weight(substitute_weight, spec);
    if (r >= 63.0) {
        throw std::overflow_error("rescaled exponent " + std::to_string(r) +
                                  " would overflow the window counter");
    }
    const double copies = std::floor(std::exp2(r));
    return copies < 1.0 ? 0 : std::uint64_t(copies);
}

std::optional<Substitution> find_substitute(const WeightedGraph& g, const Window& window,
                                            std::size_t position) {
    if (position >= window.size()) {
        throw std::out_of_range("substitute position " + std::to_string(position) +
                                " outside window of length " + std::to_string(window.size()));
    }
    const NodeId v = window[position];
    std::optional<NodeId> prev;
    std::optional<NodeId> next;
    if (position > 0) prev = window[position - 1];
    if (position + 1 < window.size()) next = window[position + 1];

    std::optional<Substitution> best;
    for (const auto& nb : g.neighbors(v)) {
        if (prev && !g.has_edge(nb.id, *prev)) continue;
        if (next && !g.has_edge(nb.id, *next)) continue;
        if (!best || nb.weight > best->weight) {
            best = Substitution{position, nb.id, nb.weight};
        }
    }
    return best;
}

std::uint64_t Corpus::total_windows() const {
    std::uint64_t total = 0;
    for (const CorpusEntry& e : entries) total += e.count;
    return total;
}

Corpus corpus_from_windows(std::vector<Window> windows) {
    Corpus corpus;
    corpus.entries.reserve(windows.size());
    for (Window& w : windows) corpus.entries.push_back({std::move(w), 1});
    return corpus;
}

double distinct_weight_median(const WeightedGraph& g) {
    if (g.edge_count() == 0) {
        throw std::invalid_argument("weight median needs a graph with at least one edge");
    }
    std::vector<double> w = g.edge_weights();
    std::sort(w.begin(), w.end());
    w.erase(std::unique(w.begin(), w.end()), w.end());
    const std::size_t k = w.size();
    return (k % 2 == 1) ? w[k / 2] : 0.5 * (w[k / 2 - 1] + w[k / 2]);
}

Corpus augment_corpus(const WeightedGraph& g, const std::vector<Window>& windows, double low,
                      double high) {
    if (g.edge_count() == 0) {
        throw std::invalid_argument("augmentation needs a graph with at least one edge");
    }
    const WeightStats stats = weight_stats(g);
    const RescaleSpec spec{low, high, stats.min_weight, stats.max_weight};
    rescale_weight(stats.min_weight, spec);  // validates the range up front
    const double threshold = distinct_weight_median(g);

    Corpus corpus;
    std::vector<CorpusEntry> derived;
    for (const Window& window : windows) {
        check_window(g, window);
        std::uint64_t original_count = 1;
        derived.clear();
        for (std::size_t pos = 0; pos < window.size(); ++pos) {
            const auto sub = find_substitute(g, window, pos);
            if (!sub || !(sub->weight > threshold)) continue;
            original_count += 1;
            const std::uint64_t copies = augmentation_count(sub->weight, spec);
            if (copies == 0) continue;
            Window replaced = window;
            replaced[pos] = sub->substitute;
            derived.push_back({std::move(replaced), copies});
        }
        corpus.entries.push_back({window, original_count});
        for (CorpusEntry& e : derived) corpus.entries.push_back(std::move(e));
    }
    return corpus;
}

}  // namespace argew

#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "argew/augment.hpp"
#include "argew/graph.hpp"
#include "argew/sgns.hpp"

namespace argew {

// Rejects zero-norm inputs and mismatched dimensions.
double cosine(std::span<const double> a, std::span<const double> b);

// Node-pair cosine statistics grouped by edge weight. Bin 0 holds sampled
// non-edge pairs (weight range [0, 0]); bins 1..n cover (0, max_weight] in
// equal right-closed intervals. Medians/means of empty bins are NaN.
struct SimilarityBin {
    double weight_lo = 0.0;
    double weight_hi = 0.0;
    std::size_t pair_count = 0;
    double median_cosine = 0.0;
    double mean_cosine = 0.0;
};

struct SimilarityBinReport {
    std::vector<SimilarityBin> bins;  // size n_bins + 1, bin 0 = non-edges
};

// Uses center embeddings. When the graph has more non-edge pairs than
// nonedge_cap, samples that many distinct pairs uniformly (seeded);
// otherwise enumerates all of them.
SimilarityBinReport similarity_by_weight_bin(const WeightedGraph& g, const EmbeddingSet& emb,
                                             int n_bins, std::size_t nonedge_cap,
                                             std::uint64_t seed);

// Per-category split: shuffles each category's members (seeded) and sends
// round(category size x train_fraction) of them to train, the rest to test.
// Returns (train ids, test ids), each sorted ascending. Rejects categories
// with fewer than 2 members and train_fraction outside (0, 1).
std::pair<std::vector<NodeId>, std::vector<NodeId>> stratified_split(
    const std::vector<int>& labels, double train_fraction, std::uint64_t seed);

// One-vs-rest logistic regression: one binary logistic model per category
// seen in training, full-batch gradient descent from zero weights (fixed
// step, fixed iteration count), L2 on weights but not bias. Prediction is
// the argmax category score; ties break to the smallest category.
class OvrLogisticClassifier {
public:
    int predict(std::span<const double> x) const;
    const std::vector<int>& categories() const { return categories_; }
    // Trained weight vector / bias for the given category list position.
    std::span<const double> weights(std::size_t category_pos) const;
    double bias(std::size_t category_pos) const { return biases_.at(category_pos); }

private:
    friend OvrLogisticClassifier train_ovr_logreg(const std::vector<std::span<const double>>&,
                                                  const std::vector<int>&,
                                                  const std::vector<NodeId>&, double, int,
                                                  double);
    std::vector<int> categories_;          // ascending
    std::vector<std::vector<double>> weights_;  // per category
    std::vector<double> biases_;
    std::size_t dim_ = 0;
};

OvrLogisticClassifier train_ovr_logreg(const std::vector<std::span<const double>>& features,
                                       const std::vector<int>& labels,
                                       const std::vector<NodeId>& train_ids, double l2_strength,
                                       int iterations = 500, double step = 0.1);

struct F1Scores {
    double micro = 0.0;
    double macro = 0.0;
};

// Micro/macro F1 over the union of categories present in truth or
// predictions. Categories with no positive precision+recall score 0.
F1Scores f1_scores(const std::vector<int>& truth, const std::vector<int>& predicted);

struct ClassificationReport {
    double micro_f1 = 0.0;  // mean over splits
    double macro_f1 = 0.0;
    std::vector<F1Scores> per_split;
};

// Repeated stratified train/test evaluation of logistic regression on the
// center embeddings. Split i uses a stream derived from (seed, i).
ClassificationReport classification_protocol(const EmbeddingSet& emb,
                                             const std::vector<int>& labels, std::uint64_t seed,
                                             double l2_strength = 1.0, int splits = 10,
                                             double train_fraction = 0.5);

// Row t: over windows whose lead node has type t, the distribution of the
// remaining positions' node types (weighted by window counts, normalized to
// sum 1). Only types that lead at least one window get a row.
struct CoappearanceTable {
    int type_count = 0;
    std::vector<int> row_types;                    // ascending
    std::vector<std::vector<double>> proportions;  // parallel to row_types, each size type_count

    // nullptr when the type never leads a window.
    const std::vector<double>* row(int type) const;
};

CoappearanceTable coappearance_distribution(const Corpus& corpus,
                                            const std::vector<int>& node_types, int type_count);

}  // namespace argew

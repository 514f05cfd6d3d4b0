#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "argew/augment.hpp"
#include "argew/graph.hpp"

namespace argew {

struct SgnsConfig {
    int dim = 128;
    int negatives_per_positive = 1;
    double learning_rate = 0.01;
    int max_epochs = 10;
    int batch_size = 1024;
    std::uint64_t seed = 0;

    // Throws std::invalid_argument on out-of-range fields.
    void validate() const;
};

// Dual embedding matrices, row-major n x dim. Center rows are the trained
// node representations; context rows exist only to score pairs.
struct EmbeddingSet {
    std::size_t node_count = 0;
    int dim = 0;
    std::vector<double> center;
    std::vector<double> context;

    std::span<double> center_row(NodeId v) {
        return {center.data() + std::size_t(v) * std::size_t(dim), std::size_t(dim)};
    }
    std::span<const double> center_row(NodeId v) const {
        return {center.data() + std::size_t(v) * std::size_t(dim), std::size_t(dim)};
    }
    std::span<double> context_row(NodeId v) {
        return {context.data() + std::size_t(v) * std::size_t(dim), std::size_t(dim)};
    }
    std::span<const double> context_row(NodeId v) const {
        return {context.data() + std::size_t(v) * std::size_t(dim), std::size_t(dim)};
    }
};

struct TrainReport {
    std::vector<double> epoch_mean_loss;
    int epochs_run = 0;
    bool stopped_early = false;
};

// Center rows uniform in [-0.5/dim, 0.5/dim] from the config seed; context
// rows zero.
EmbeddingSet init_embeddings(std::size_t node_count, const SgnsConfig& config);

// Loss and exact gradients for one (center, context, negatives) example:
//   loss = -log sigmoid(c.u) - sum_j log sigmoid(-c.n_j)
struct PairLossResult {
    double loss = 0.0;
    std::vector<double> center_grad;
    std::vector<double> context_grad;
    std::vector<std::vector<double>> negative_grads;
};

PairLossResult pair_loss(std::span<const double> center, std::span<const double> context,
                         const std::vector<std::vector<double>>& negatives);

// k node ids uniform over 0..node_count-1, with replacement.
std::vector<NodeId> sample_negatives(std::size_t node_count, int k, std::mt19937_64& rng);

struct TrainResult {
    EmbeddingSet embeddings;
    TrainReport report;
};

// Plain SGD over the expanded positive pairs (each corpus entry contributes
// count x (window length - 1) pairs). Every epoch reshuffles the pairs and
// resamples negatives from per-epoch streams; updates are applied per batch
// against the batch-start weights, each row stepping by the average of the
// gradients from the batch pairs that touch it. Stops early when an epoch's
// mean loss fails to improve.
// Single-threaded and bit-for-bit deterministic for a given config.
// Windows must fit the stated context_size and reference nodes < node_count.
TrainResult train(const Corpus& corpus, std::size_t node_count, int context_size,
                  const SgnsConfig& config);

}  // namespace argew

#include "argew/sgns.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "argew/rng.hpp"
#include "argew/walks.hpp"

namespace argew {

namespace {

constexpr std::uint64_t kInitTag = 0x696e6974;      // embedding initialization
constexpr std::uint64_t kShuffleTag = 0x73687566;   // per-epoch pair order
constexpr std::uint64_t kNegativeTag = 0x6e656773;  // per-epoch negative draws

// Expanding a corpus materializes count * (len - 1) pairs per entry; cap the
// total so absurd multiplicities fail fast instead of exhausting memory.
constexpr std::uint64_t kMaxExpandedPairs = 100'000'000;

double sigmoid(double x) {
    if (x >= 0.0) {
        return 1.0 / (1.0 + std::exp(-x));
    }
    const double e = std::exp(x);
    return e / (1.0 + e);
}

// log(1 + e^x), safe against overflow; -log sigmoid(x) == softplus(-x).
double softplus(double x) {
    return std::max(x, 0.0) + std::log1p(std::exp(-std::abs(x)));
}

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

void axpy(double coeff, std::span<const double> x, std::span<double> out) {
    for (std::size_t i = 0; i < x.size(); ++i) out[i] += coeff * x[i];
}

}  // namespace

void SgnsConfig::validate() const {
    if (dim < 1) throw std::invalid_argument("dim must be at least 1");
    if (negatives_per_positive < 1) {
        throw std::invalid_argument("negatives_per_positive must be at least 1");
    }
    if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
        throw std::invalid_argument("learning_rate must be positive");
    }
    if (max_epochs < 1) throw std::invalid_argument("max_epochs must be at least 1");
    if (batch_size < 1) throw std::invalid_argument("batch_size must be at least 1");
}

EmbeddingSet init_embeddings(std::size_t node_count, const SgnsConfig& config) {
    config.validate();
    if (node_count == 0) throw std::invalid_argument("cannot embed an empty node set");
    EmbeddingSet emb;
    emb.node_count = node_count;
    emb.dim = config.dim;
    emb.center.resize(node_count * std::size_t(config.dim));
    emb.context.assign(node_count * std::size_t(config.dim), 0.0);
    const double half = 0.5 / double(config.dim);
    std::uniform_real_distribution<double> dist(-half, half);
    auto stream = rng::stream(config.seed, kInitTag);
    for (double& x : emb.center) x = dist(stream);
    return emb;
}

PairLossResult pair_loss(std::span<const double> center, std::span<const double> context,
                         const std::vector<std::vector<double>>& negatives) {
    const std::size_t d = center.size();
    if (context.size() != d) {
        throw std::invalid_argument("center and context dimensions differ");
    }
    for (const auto& n : negatives) {
        if (n.size() != d) throw std::invalid_argument("negative vector dimension differs");
    }

    PairLossResult res;
    res.center_grad.assign(d, 0.0);
    res.context_grad.assign(d, 0.0);
    res.negative_grads.assign(negatives.size(), std::vector<double>(d, 0.0));

    const double pos_dot = dot(center, context);
    res.loss = softplus(-pos_dot);
    const double pos_coeff = sigmoid(pos_dot) - 1.0;
    axpy(pos_coeff, context, res.center_grad);
    axpy(pos_coeff, center, res.context_grad);

    for (std::size_t j = 0; j < negatives.size(); ++j) {
        std::span<const double> neg(negatives[j]);
        const double neg_dot = dot(center, neg);
        res.loss += softplus(neg_dot);
        const double neg_coeff = sigmoid(neg_dot);
        axpy(neg_coeff, neg, res.center_grad);
        axpy(neg_coeff, center, res.negative_grads[j]);
    }
    return res;
}

std::vector<NodeId> sample_negatives(std::size_t node_count, int k, std::mt19937_64& rng) {
    if (node_count == 0) throw std::invalid_argument("cannot sample negatives from 0 nodes");
    if (k < 1) throw std::invalid_argument("need at least 1 negative sample");
    std::uniform_int_distribution<NodeId> dist(0, NodeId(node_count - 1));
    std::vector<NodeId> out(static_cast<std::size_t>(k));
    for (NodeId& v : out) v = dist(rng);
    return out;
}

TrainResult train(const Corpus& corpus, std::size_t node_count, int context_size,
                  const SgnsConfig& config) {
    config.validate();
    if (context_size < 2) throw std::invalid_argument("context_size must be at least 2");
    if (corpus.entries.empty()) throw std::invalid_argument("training corpus is empty");
    if (node_count == 0) throw std::invalid_argument("cannot embed an empty node set");

    std::uint64_t total_pairs = 0;
    for (const CorpusEntry& e : corpus.entries) {
        if (e.count < 1) throw std::invalid_argument("corpus entry with count 0");
        if (e.window.size() < 2) throw std::invalid_argument("corpus window shorter than 2 nodes");
        if (e.window.size() > std::size_t(context_size)) {
            throw std::invalid_argument("corpus window of length " +
                                        std::to_string(e.window.size()) +
                                        " exceeds context_size " + std::to_string(context_size));
        }
        for (NodeId v : e.window) {
            if (v >= node_count) {
                throw std::invalid_argument("corpus references node " + std::to_string(v) +
                                            " but only " + std::to_string(node_count) +
                                            " nodes are being embedded");
            }
        }
        total_pairs += e.count * (e.window.size() - 1);
    }
    if (total_pairs > kMaxExpandedPairs) {
        throw std::invalid_argument("corpus expands to " + std::to_string(total_pairs) +
                                    " training pairs; limit is " +
                                    std::to_string(kMaxExpandedPairs));
    }

    std::vector<std::pair<NodeId, NodeId>> pairs;
    pairs.reserve(std::size_t(total_pairs));
    for (const CorpusEntry& e : corpus.entries) {
        const auto window_pairs = positive_pairs(e.window);
        for (std::uint64_t rep = 0; rep < e.count; ++rep) {
            pairs.insert(pairs.end(), window_pairs.begin(), window_pairs.end());
        }
    }

    EmbeddingSet emb = init_embeddings(node_count, config);
    TrainReport report;
    const std::size_t d = std::size_t(config.dim);
    const int k = config.negatives_per_positive;

    // Batch gradient accumulators; only touched rows are scanned and reset.
    // Each row's step is the mean of the per-pair gradients over the pairs
    // in the batch that touch that row, so step magnitudes stay at the
    // native gradient scale no matter how large the batch is.
    std::vector<double> center_acc(emb.center.size(), 0.0);
    std::vector<double> context_acc(emb.context.size(), 0.0);
    std::vector<std::uint32_t> center_touches(node_count, 0);
    std::vector<std::uint32_t> context_touches(node_count, 0);
    std::vector<NodeId> center_touched;
    std::vector<NodeId> context_touched;
    std::vector<NodeId> pair_context_rows;  // distinct context rows of one pair
    auto acc_row = [d](std::vector<double>& acc, NodeId v) {
        return std::span<double>(acc.data() + std::size_t(v) * d, d);
    };

    for (int epoch = 0; epoch < config.max_epochs; ++epoch) {
        auto shuffle_stream = rng::stream(config.seed, kShuffleTag, std::uint64_t(epoch));
        std::shuffle(pairs.begin(), pairs.end(), shuffle_stream);
        auto negative_stream = rng::stream(config.seed, kNegativeTag, std::uint64_t(epoch));
        std::uniform_int_distribution<NodeId> neg_dist(0, NodeId(node_count - 1));

        double loss_sum = 0.0;
        std::size_t i = 0;
        while (i < pairs.size()) {
            const std::size_t batch_end = std::min(i + std::size_t(config.batch_size),
                                                   pairs.size());
            for (; i < batch_end; ++i) {
                const auto [center_id, context_id] = pairs[i];
                const auto c = emb.center_row(center_id);
                const auto u = emb.context_row(context_id);

                if (center_touches[center_id]++ == 0) {
                    center_touched.push_back(center_id);
                }
                pair_context_rows.clear();
                pair_context_rows.push_back(context_id);
                const auto c_acc = acc_row(center_acc, center_id);
                const auto u_acc = acc_row(context_acc, context_id);

                const double pos_dot = dot(c, u);
                loss_sum += softplus(-pos_dot);
                const double pos_coeff = sigmoid(pos_dot) - 1.0;
                axpy(pos_coeff, u, c_acc);
                axpy(pos_coeff, c, u_acc);

                for (int j = 0; j < k; ++j) {
                    const NodeId neg_id = neg_dist(negative_stream);
                    const auto n = emb.context_row(neg_id);
                    const double neg_dot = dot(c, n);
                    loss_sum += softplus(neg_dot);
                    const double neg_coeff = sigmoid(neg_dot);
                    axpy(neg_coeff, n, c_acc);
                    if (std::find(pair_context_rows.begin(), pair_context_rows.end(), neg_id) ==
                        pair_context_rows.end()) {
                        pair_context_rows.push_back(neg_id);
                    }
                    axpy(neg_coeff, c, acc_row(context_acc, neg_id));
                }
                // one touch per pair per distinct row: a row hit twice by the
                // same pair (negative == context) owns the summed gradient
                for (NodeId v : pair_context_rows) {
                    if (context_touches[v]++ == 0) {
                        context_touched.push_back(v);
                    }
                }
            }

            for (NodeId v : center_touched) {
                axpy(-config.learning_rate / double(center_touches[v]), acc_row(center_acc, v),
                     emb.center_row(v));
                std::fill_n(center_acc.begin() + std::size_t(v) * d, d, 0.0);
                center_touches[v] = 0;
            }
            center_touched.clear();
            for (NodeId v : context_touched) {
                axpy(-config.learning_rate / double(context_touches[v]), acc_row(context_acc, v),
                     emb.context_row(v));
                std::fill_n(context_acc.begin() + std::size_t(v) * d, d, 0.0);
                context_touches[v] = 0;
            }
            context_touched.clear();
        }

        const double mean_loss = loss_sum / double(pairs.size());
        if (!std::isfinite(mean_loss)) {
            throw std::runtime_error("training diverged: non-finite loss in epoch " +
                                     std::to_string(epoch));
        }
        for (double x : emb.center) {
            if (!std::isfinite(x)) {
                throw std::runtime_error("training diverged: non-finite embedding in epoch " +
                                         std::to_string(epoch));
            }
        }
        report.epoch_mean_loss.push_back(mean_loss);
        report.epochs_run = epoch + 1;
        if (epoch > 0 && mean_loss >= report.epoch_mean_loss[std::size_t(epoch) - 1]) {
            report.stopped_early = true;
            break;
        }
    }
    return {std::move(emb), std::move(report)};
}

}  // namespace argew

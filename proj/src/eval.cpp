#include "argew/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "argew/rng.hpp"

namespace argew {

namespace {

constexpr std::uint64_t kNonEdgeTag = 0x6e6f6e65;  // non-edge pair sampling
constexpr std::uint64_t kSplitTag = 0x73706c74;    // per-split shuffling

double median_of(std::vector<double>& values) {
    if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
    std::sort(values.begin(), values.end());
    const std::size_t m = values.size();
    return (m % 2 == 1) ? values[m / 2] : 0.5 * (values[m / 2 - 1] + values[m / 2]);
}

double mean_of(const std::vector<double>& values) {
    if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
    double s = 0.0;
    for (double v : values) s += v;
    return s / double(values.size());
}

double sigmoid(double x) {
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
    const double e = std::exp(x);
    return e / (1.0 + e);
}

// F1 from integer confusion counts; 0 whenever precision + recall is 0.
double f1_from_counts(std::uint64_t tp, std::uint64_t fp, std::uint64_t fn) {
    const double p = (tp + fp) == 0 ? 0.0 : double(tp) / double(tp + fp);
    const double r = (tp + fn) == 0 ? 0.0 : double(tp) / double(tp + fn);
    return (p + r) == 0.0 ? 0.0 : 2.0 * p * r / (p + r);
}

}  // namespace

double cosine(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw std::invalid_argument("cosine inputs have different sizes");
    if (a.empty()) throw std::invalid_argument("cosine of empty vectors");
    double ab = 0.0, aa = 0.0, bb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ab += a[i] * b[i];
        aa += a[i] * a[i];
        bb += b[i] * b[i];
    }
    if (aa == 0.0 || bb == 0.0) {
        throw std::invalid_argument("cosine is undefined for zero vectors");
    }
    return ab / (std::sqrt(aa) * std::sqrt(bb));
}

SimilarityBinReport similarity_by_weight_bin(const WeightedGraph& g, const EmbeddingSet& emb,
                                             int n_bins, std::size_t nonedge_cap,
                                             std::uint64_t seed) {
    if (n_bins < 1) throw std::invalid_argument("need at least 1 weight bin");
    if (g.edge_count() == 0) {
        throw std::invalid_argument("similarity report needs a graph with at least one edge");
    }
    if (emb.node_count != g.node_count()) {
        throw std::invalid_argument("embedding count " + std::to_string(emb.node_count) +
                                    " does not match graph node count " +
                                    std::to_string(g.node_count()));
    }
    const std::size_t n = g.node_count();
    const double max_w = weight_stats(g).max_weight;
    const double width = max_w / double(n_bins);

    std::vector<std::vector<double>> bin_values(std::size_t(n_bins) + 1);
    for (NodeId u = 0; u < n; ++u) {
        for (const auto& nb : g.neighbors(u)) {
            if (nb.id <= u) continue;
            int idx = int(std::ceil(nb.weight / width));
            idx = std::clamp(idx, 1, n_bins);
            bin_values[std::size_t(idx)].push_back(
                cosine(emb.center_row(u), emb.center_row(nb.id)));
        }
    }

    const std::uint64_t total_pairs = std::uint64_t(n) * (n - 1) / 2;
    const std::uint64_t total_nonedges = total_pairs - g.edge_count();
    auto& nonedge_values = bin_values[0];
    if (total_nonedges <= nonedge_cap) {
        for (NodeId u = 0; u < n; ++u) {
            for (NodeId v = u + 1; v < n; ++v) {
                if (g.has_edge(u, v)) continue;
                nonedge_values.push_back(cosine(emb.center_row(u), emb.center_row(v)));
            }
        }
    } else {
        auto stream = rng::stream(seed, kNonEdgeTag);
        std::uniform_int_distribution<NodeId> dist(0, NodeId(n - 1));
        std::unordered_set<std::uint64_t> seen;
        while (seen.size() < nonedge_cap) {
            NodeId u = dist(stream);
            NodeId v = dist(stream);
            if (u == v) continue;
            if (u > v) std::swap(u, v);
            if (g.has_edge(u, v)) continue;
            const std::uint64_t key = (std::uint64_t(u) << 32) | v;
            if (!seen.insert(key).second) continue;
            nonedge_values.push_back(cosine(emb.center_row(u), emb.center_row(v)));
        }
    }

    SimilarityBinReport report;
    report.bins.resize(std::size_t(n_bins) + 1);
    for (std::size_t b = 0; b < report.bins.size(); ++b) {
        SimilarityBin& bin = report.bins[b];
        bin.weight_lo = (b == 0) ? 0.0 : double(b - 1) * width;
        bin.weight_hi = (b == 0) ? 0.0 : double(b) * width;
        bin.pair_count = bin_values[b].size();
        bin.mean_cosine = mean_of(bin_values[b]);
        bin.median_cosine = median_of(bin_values[b]);
    }
    return report;
}

std::pair<std::vector<NodeId>, std::vector<NodeId>> stratified_split(
    const std::vector<int>& labels, double train_fraction, std::uint64_t seed) {
    if (!(train_fraction > 0.0) || !(train_fraction < 1.0)) {
        throw std::invalid_argument("train_fraction must lie strictly between 0 and 1");
    }
    if (labels.empty()) throw std::invalid_argument("no labels to split");

    std::vector<int> categories(labels);
    std::sort(categories.begin(), categories.end());
    categories.erase(std::unique(categories.begin(), categories.end()), categories.end());

    std::vector<NodeId> train, test;
    auto stream = rng::stream(seed, kSplitTag);
    for (int cat : categories) {
        std::vector<NodeId> members;
        for (std::size_t v = 0; v < labels.size(); ++v) {
            if (labels[v] == cat) members.push_back(NodeId(v));
        }
        if (members.size() < 2) {
            throw std::invalid_argument("category " + std::to_string(cat) +
                                        " has fewer than 2 members; it cannot be split");
        }
        std::shuffle(members.begin(), members.end(), stream);
        const auto take = std::size_t(std::llround(double(members.size()) * train_fraction));
        train.insert(train.end(), members.begin(), members.begin() + take);
        test.insert(test.end(), members.begin() + take, members.end());
    }
    std::sort(train.begin(), train.end());
    std::sort(test.begin(), test.end());
    return {std::move(train), std::move(test)};
}

OvrLogisticClassifier train_ovr_logreg(const std::vector<std::span<const double>>& features,
                                       const std::vector<int>& labels,
                                       const std::vector<NodeId>& train_ids, double l2_strength,
                                       int iterations, double step) {
    if (features.size() != labels.size()) {
        throw std::invalid_argument("feature and label counts differ");
    }
    if (train_ids.empty()) throw std::invalid_argument("empty training set");
    if (l2_strength < 0.0 || !std::isfinite(l2_strength)) {
        throw std::invalid_argument("l2_strength must be non-negative");
    }
    if (iterations < 1) throw std::invalid_argument("need at least 1 iteration");
    if (!(step > 0.0)) throw std::invalid_argument("step must be positive");
    for (NodeId id : train_ids) {
        if (std::size_t(id) >= features.size()) {
            throw std::out_of_range("training id " + std::to_string(id) + " out of range");
        }
    }

    const std::size_t d = features[train_ids.front()].size();
    OvrLogisticClassifier clf;
    clf.dim_ = d;
    for (NodeId id : train_ids) clf.categories_.push_back(labels[id]);
    std::sort(clf.categories_.begin(), clf.categories_.end());
    clf.categories_.erase(std::unique(clf.categories_.begin(), clf.categories_.end()),
                          clf.categories_.end());
    if (clf.categories_.size() < 2) {
        throw std::invalid_argument("training set covers fewer than 2 categories");
    }

    const double m = double(train_ids.size());
    // L2 is applied as a post-step shrink (proximal form): the penalized
    // objective keeps its minimizer but the update stays stable for any
    // l2_strength, unlike folding l2 * w into the gradient step.
    const double shrink = 1.0 / (1.0 + step * l2_strength);
    for (int cat : clf.categories_) {
        std::vector<double> w(d, 0.0);
        double b = 0.0;
        std::vector<double> grad(d);
        for (int it = 0; it < iterations; ++it) {
            std::fill(grad.begin(), grad.end(), 0.0);
            double grad_b = 0.0;
            for (NodeId id : train_ids) {
                const auto x = features[id];
                if (x.size() != d) {
                    throw std::invalid_argument("feature row " + std::to_string(id) +
                                                " has inconsistent dimension");
                }
                double z = b;
                for (std::size_t i = 0; i < d; ++i) z += w[i] * x[i];
                const double err = sigmoid(z) - (labels[id] == cat ? 1.0 : 0.0);
                for (std::size_t i = 0; i < d; ++i) grad[i] += err * x[i];
                grad_b += err;
            }
            for (std::size_t i = 0; i < d; ++i) w[i] = (w[i] - step * grad[i] / m) * shrink;
            b -= step * grad_b / m;
        }
        clf.weights_.push_back(std::move(w));
        clf.biases_.push_back(b);
    }
    return clf;
}

int OvrLogisticClassifier::predict(std::span<const double> x) const {
    if (x.size() != dim_) throw std::invalid_argument("feature dimension mismatch");
    std::size_t best = 0;
    double best_score = -std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < categories_.size(); ++c) {
        double z = biases_[c];
        for (std::size_t i = 0; i < dim_; ++i) z += weights_[c][i] * x[i];
        if (z > best_score) {  // strict: ties stay with the smaller category
            best_score = z;
            best = c;
        }
    }
    return categories_[best];
}

std::span<const double> OvrLogisticClassifier::weights(std::size_t category_pos) const {
    return weights_.at(category_pos);
}

F1Scores f1_scores(const std::vector<int>& truth, const std::vector<int>& predicted) {
    if (truth.size() != predicted.size()) {
        throw std::invalid_argument("truth and prediction counts differ");
    }
    if (truth.empty()) throw std::invalid_argument("cannot score an empty set");

    std::vector<int> categories;
    categories.insert(categories.end(), truth.begin(), truth.end());
    categories.insert(categories.end(), predicted.begin(), predicted.end());
    std::sort(categories.begin(), categories.end());
    categories.erase(std::unique(categories.begin(), categories.end()), categories.end());

    std::uint64_t tp_total = 0, fp_total = 0, fn_total = 0;
    double f1_sum = 0.0;
    for (int cat : categories) {
        std::uint64_t tp = 0, fp = 0, fn = 0;
        for (std::size_t i = 0; i < truth.size(); ++i) {
            const bool is_true = truth[i] == cat;
            const bool is_pred = predicted[i] == cat;
            if (is_true && is_pred) ++tp;
            else if (!is_true && is_pred) ++fp;
            else if (is_true && !is_pred) ++fn;
        }
        tp_total += tp;
        fp_total += fp;
        fn_total += fn;
        f1_sum += f1_from_counts(tp, fp, fn);
    }

    F1Scores scores;
    scores.micro = f1_from_counts(tp_total, fp_total, fn_total);
    scores.macro = f1_sum / double(categories.size());
    return scores;
}

ClassificationReport classification_protocol(const EmbeddingSet& emb,
                                             const std::vector<int>& labels, std::uint64_t seed,
                                             double l2_strength, int splits,
                                             double train_fraction) {
    if (labels.size() != emb.node_count) {
        throw std::invalid_argument("label count " + std::to_string(labels.size()) +
                                    " does not match embedding count " +
                                    std::to_string(emb.node_count));
    }
    if (splits < 1) throw std::invalid_argument("need at least 1 split");

    std::vector<std::span<const double>> features;
    features.reserve(emb.node_count);
    for (NodeId v = 0; v < emb.node_count; ++v) features.push_back(emb.center_row(v));

    ClassificationReport report;
    for (int s = 0; s < splits; ++s) {
        const auto [train_ids, test_ids] =
            stratified_split(labels, train_fraction, rng::mix(seed, std::uint64_t(s)));
        const auto clf = train_ovr_logreg(features, labels, train_ids, l2_strength);
        std::vector<int> truth, predicted;
        truth.reserve(test_ids.size());
        predicted.reserve(test_ids.size());
        for (NodeId id : test_ids) {
            truth.push_back(labels[id]);
            predicted.push_back(clf.predict(features[id]));
        }
        report.per_split.push_back(f1_scores(truth, predicted));
    }
    for (const F1Scores& s : report.per_split) {
        report.micro_f1 += s.micro;
        report.macro_f1 += s.macro;
    }
    report.micro_f1 /= double(report.per_split.size());
    report.macro_f1 /= double(report.per_split.size());
    return report;
}

const std::vector<double>* CoappearanceTable::row(int type) const {
    for (std::size_t i = 0; i < row_types.size(); ++i) {
        if (row_types[i] == type) return &proportions[i];
    }
    return nullptr;
}

CoappearanceTable coappearance_distribution(const Corpus& corpus,
                                            const std::vector<int>& node_types, int type_count) {
    if (type_count < 1) throw std::invalid_argument("need at least 1 node type");
    if (corpus.entries.empty()) throw std::invalid_argument("empty corpus");
    for (std::size_t v = 0; v < node_types.size(); ++v) {
        if (node_types[v] < 0 || node_types[v] >= type_count) {
            throw std::invalid_argument("node " + std::to_string(v) + " has type " +
                                        std::to_string(node_types[v]) + " outside 0.." +
                                        std::to_string(type_count - 1));
        }
    }

    auto type_of = [&](NodeId v) {
        if (std::size_t(v) >= node_types.size()) {
            throw std::invalid_argument("corpus references node " + std::to_string(v) +
                                        " with no assigned type");
        }
        return node_types[v];
    };

    std::vector<std::vector<double>> counts(std::size_t(type_count),
                                            std::vector<double>(std::size_t(type_count), 0.0));
    for (const CorpusEntry& e : corpus.entries) {
        if (e.window.size() < 2) throw std::invalid_argument("corpus window shorter than 2 nodes");
        const int lead = type_of(e.window.front());
        for (std::size_t i = 1; i < e.window.size(); ++i) {
            counts[std::size_t(lead)][std::size_t(type_of(e.window[i]))] += double(e.count);
        }
    }

    CoappearanceTable table;
    table.type_count = type_count;
    for (int t = 0; t < type_count; ++t) {
        double row_total = 0.0;
        for (double c : counts[std::size_t(t)]) row_total += c;
        if (row_total == 0.0) continue;
        std::vector<double> row(counts[std::size_t(t)]);
        for (double& c : row) c /= row_total;
        table.row_types.push_back(t);
        table.proportions.push_back(std::move(row));
    }
    return table;
}

}  // namespace argew

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <span>
#include <stdexcept>
#include <vector>

#include "argew/eval.hpp"
#include "argew/graph.hpp"
#include "argew/rng.hpp"
#include "argew/sgns.hpp"

using namespace argew;

namespace {

EmbeddingSet embeddings_from_rows(const std::vector<std::vector<double>>& rows) {
    EmbeddingSet emb;
    emb.node_count = rows.size();
    emb.dim = int(rows.front().size());
    for (const auto& row : rows) {
        emb.center.insert(emb.center.end(), row.begin(), row.end());
    }
    emb.context.assign(emb.center.size(), 0.0);
    return emb;
}

}  // namespace

TEST_CASE("cosine on known angles") {
    const std::vector<double> ex = {1.0, 0.0};
    const std::vector<double> ey = {0.0, 1.0};
    const std::vector<double> diag = {1.0, 1.0};
    const std::vector<double> neg = {-2.0, 0.0};
    CHECK(cosine(ex, ex) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(cosine(ex, ey) == doctest::Approx(0.0));
    CHECK(cosine(ex, neg) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(cosine(ex, diag) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(cosine(diag, ex) == cosine(ex, diag));
}

TEST_CASE("cosine rejects degenerate input") {
    const std::vector<double> zero = {0.0, 0.0};
    const std::vector<double> ex = {1.0, 0.0};
    const std::vector<double> three = {1.0, 0.0, 0.0};
    CHECK_THROWS_AS(cosine(zero, ex), std::invalid_argument);
    CHECK_THROWS_AS(cosine(ex, zero), std::invalid_argument);
    CHECK_THROWS_AS(cosine(ex, three), std::invalid_argument);
    CHECK_THROWS_AS(cosine(std::vector<double>{}, std::vector<double>{}),
                    std::invalid_argument);
}

TEST_CASE("similarity bins partition (0, max] into right-closed slices") {
    // weights 1, 2, 3 with 3 bins of width 1; node 3 only creates non-edges
    const WeightedGraph g = build_graph({{0, 1, 1.0}, {0, 2, 2.0}, {1, 2, 3.0}, {3, 4, 1.0}});
    const EmbeddingSet emb = embeddings_from_rows({{1.0, 0.0},
                                                   {1.0, 0.0},
                                                   {0.0, 1.0},
                                                   {1.0, 1.0},
                                                   {1.0, 0.0}});
    const SimilarityBinReport rep = similarity_by_weight_bin(g, emb, 3, 1000, 5);
    REQUIRE(rep.bins.size() == 4);

    CHECK(rep.bins[0].weight_lo == 0.0);
    CHECK(rep.bins[0].weight_hi == 0.0);
    CHECK(rep.bins[0].pair_count == 6);  // all pairs minus the 4 edges

    CHECK(rep.bins[1].weight_lo == doctest::Approx(0.0));
    CHECK(rep.bins[1].weight_hi == doctest::Approx(1.0));
    CHECK(rep.bins[1].pair_count == 2);  // weights exactly on a boundary stay below it
    CHECK(rep.bins[2].weight_hi == doctest::Approx(2.0));
    CHECK(rep.bins[2].pair_count == 1);
    CHECK(rep.bins[3].weight_hi == doctest::Approx(3.0));
    CHECK(rep.bins[3].pair_count == 1);

    // weight-2 bin holds only (0,2): orthogonal vectors
    CHECK(rep.bins[2].median_cosine == doctest::Approx(0.0));
    CHECK(rep.bins[2].mean_cosine == doctest::Approx(0.0));
    // weight-3 bin holds only (1,2): also orthogonal
    CHECK(rep.bins[3].median_cosine == doctest::Approx(0.0));

    std::size_t total = 0;
    for (const auto& bin : rep.bins) total += bin.pair_count;
    CHECK(total == 5 * 4 / 2);  // every node pair lands in exactly one bin
}

TEST_CASE("empty similarity bins report NaN statistics") {
    const WeightedGraph g = build_graph({{0, 1, 3.0}});
    const EmbeddingSet emb = embeddings_from_rows({{1.0, 0.0}, {1.0, 0.0}});
    const SimilarityBinReport rep = similarity_by_weight_bin(g, emb, 3, 10, 1);
    REQUIRE(rep.bins.size() == 4);
    CHECK(rep.bins[0].pair_count == 0);  // two nodes, one edge: no non-edges
    CHECK(std::isnan(rep.bins[0].median_cosine));
    CHECK(rep.bins[1].pair_count == 0);
    CHECK(std::isnan(rep.bins[1].mean_cosine));
    CHECK(rep.bins[3].pair_count == 1);
    CHECK(rep.bins[3].median_cosine == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("non-edge sampling respects the cap and the seed") {
    // 12 isolated-ish nodes, one edge: 65 non-edge pairs, cap at 10
    std::vector<WeightedEdge> edges = {{0, 11, 1.0}};
    const WeightedGraph g = build_graph(edges);
    std::vector<std::vector<double>> rows(12, std::vector<double>{1.0, 0.5});
    const EmbeddingSet emb = embeddings_from_rows(rows);

    const SimilarityBinReport a = similarity_by_weight_bin(g, emb, 2, 10, 7);
    CHECK(a.bins[0].pair_count == 10);
    const SimilarityBinReport b = similarity_by_weight_bin(g, emb, 2, 10, 7);
    CHECK(a.bins[0].median_cosine == b.bins[0].median_cosine);
    CHECK(a.bins[0].mean_cosine == b.bins[0].mean_cosine);
}

TEST_CASE("similarity report input validation") {
    const WeightedGraph g = build_graph({{0, 1, 1.0}});
    const EmbeddingSet emb = embeddings_from_rows({{1.0}, {1.0}});
    CHECK_THROWS_AS(similarity_by_weight_bin(g, emb, 0, 10, 1), std::invalid_argument);
    CHECK_THROWS_AS(similarity_by_weight_bin(WeightedGraph{}, emb, 2, 10, 1),
                    std::invalid_argument);
    const EmbeddingSet wrong = embeddings_from_rows({{1.0}});
    CHECK_THROWS_AS(similarity_by_weight_bin(g, wrong, 2, 10, 1), std::invalid_argument);
}

TEST_CASE("stratified split balances every category") {
    const std::vector<int> labels = {0, 0, 0, 0, 1, 1, 1, 1};
    const auto [train, test] = stratified_split(labels, 0.5, 11);
    CHECK(train.size() == 4);
    CHECK(test.size() == 4);
    CHECK(std::is_sorted(train.begin(), train.end()));
    CHECK(std::is_sorted(test.begin(), test.end()));

    // partition: disjoint and exhaustive
    std::set<NodeId> all(train.begin(), train.end());
    all.insert(test.begin(), test.end());
    CHECK(all.size() == labels.size());

    // per-category counts
    for (int cat : {0, 1}) {
        const auto count = std::count_if(train.begin(), train.end(),
                                         [&](NodeId v) { return labels[v] == cat; });
        CHECK(count == 2);
    }

    // half of five rounds up
    const std::vector<int> five = {0, 0, 0, 0, 0};
    CHECK(stratified_split(five, 0.5, 1).first.size() == 3);
}

TEST_CASE("stratified split is seeded and validates input") {
    const std::vector<int> labels = {0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 1, 1};
    CHECK(stratified_split(labels, 0.5, 9) == stratified_split(labels, 0.5, 9));
    bool any_difference = false;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        if (stratified_split(labels, 0.5, seed) != stratified_split(labels, 0.5, 99)) {
            any_difference = true;
        }
    }
    CHECK(any_difference);

    CHECK_THROWS_AS(stratified_split({0, 0, 1}, 0.5, 1), std::invalid_argument);  // singleton
    CHECK_THROWS_AS(stratified_split(labels, 0.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(stratified_split(labels, 1.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(stratified_split({}, 0.5, 1), std::invalid_argument);
}

TEST_CASE("logistic regression separates two blobs") {
    std::vector<std::vector<double>> rows;
    std::vector<int> labels;
    auto gen = rng::stream(21);
    std::uniform_real_distribution<double> noise(-1.0, 1.0);
    for (int i = 0; i < 10; ++i) {
        rows.push_back({5.0 + noise(gen), 5.0 + noise(gen)});
        labels.push_back(1);
        rows.push_back({-5.0 + noise(gen), -5.0 + noise(gen)});
        labels.push_back(0);
    }
    std::vector<std::span<const double>> features;
    for (const auto& r : rows) features.emplace_back(r);
    std::vector<NodeId> ids(rows.size());
    for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = NodeId(i);

    const OvrLogisticClassifier clf = train_ovr_logreg(features, labels, ids, 1.0);
    CHECK(clf.categories() == std::vector<int>{0, 1});
    int correct = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (clf.predict(features[i]) == labels[i]) ++correct;
    }
    CHECK(correct == int(rows.size()));

    // overwhelming L2 crushes the weights toward zero but leaves the bias free
    const OvrLogisticClassifier crushed = train_ovr_logreg(features, labels, ids, 1e6);
    for (std::size_t c = 0; c < crushed.categories().size(); ++c) {
        double norm = 0.0;
        for (double w : crushed.weights(c)) norm += w * w;
        CHECK(std::sqrt(norm) < 0.01);
    }
}

TEST_CASE("prediction ties break to the smallest category") {
    // all-zero features and balanced labels keep both binary models at zero,
    // so every score ties
    const std::vector<std::vector<double>> rows = {{0.0, 0.0}, {0.0, 0.0}};
    std::vector<std::span<const double>> features;
    for (const auto& r : rows) features.emplace_back(r);
    const OvrLogisticClassifier clf =
        train_ovr_logreg(features, {3, 7}, {NodeId(0), NodeId(1)}, 1.0);
    CHECK(clf.predict(features[0]) == 3);
}

TEST_CASE("logistic regression input validation") {
    const std::vector<std::vector<double>> rows = {{1.0}, {2.0}};
    std::vector<std::span<const double>> features;
    for (const auto& r : rows) features.emplace_back(r);
    CHECK_THROWS_AS(train_ovr_logreg(features, {0}, {NodeId(0)}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(train_ovr_logreg(features, {0, 1}, {}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(train_ovr_logreg(features, {0, 1}, {NodeId(5)}, 1.0), std::out_of_range);
    CHECK_THROWS_AS(train_ovr_logreg(features, {0, 0}, {NodeId(0), NodeId(1)}, 1.0),
                    std::invalid_argument);  // single category
    CHECK_THROWS_AS(train_ovr_logreg(features, {0, 1}, {NodeId(0), NodeId(1)}, -1.0),
                    std::invalid_argument);
}

TEST_CASE("f1 on a worked multi-category example") {
    // cat 0: tp=1 fp=0 fn=1 -> f1 = 2/3; cat 1: tp=2 fp=1 fn=0 -> f1 = 0.8
    const F1Scores s = f1_scores({0, 0, 1, 1}, {0, 1, 1, 1});
    CHECK(s.micro == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(s.macro == doctest::Approx((2.0 / 3.0 + 0.8) / 2.0).epsilon(1e-12));

    // collapsing onto one category: the untouched category scores zero
    const F1Scores c = f1_scores({0, 1}, {0, 0});
    CHECK(c.micro == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(c.macro == doctest::Approx((2.0 / 3.0 + 0.0) / 2.0).epsilon(1e-12));

    const F1Scores perfect = f1_scores({2, 5, 2}, {2, 5, 2});
    CHECK(perfect.micro == doctest::Approx(1.0));
    CHECK(perfect.macro == doctest::Approx(1.0));
}

TEST_CASE("micro f1 equals accuracy in single-label scoring") {
    auto gen = rng::stream(31);
    std::uniform_int_distribution<int> cat(0, 3);
    for (int round = 0; round < 50; ++round) {
        std::vector<int> truth(20), pred(20);
        int correct = 0;
        for (std::size_t i = 0; i < truth.size(); ++i) {
            truth[i] = cat(gen);
            pred[i] = cat(gen);
            if (truth[i] == pred[i]) ++correct;
        }
        const F1Scores s = f1_scores(truth, pred);
        CHECK(s.micro == doctest::Approx(double(correct) / 20.0).epsilon(1e-12));
    }
    CHECK_THROWS_AS(f1_scores({0, 1}, {0}), std::invalid_argument);
    CHECK_THROWS_AS(f1_scores({}, {}), std::invalid_argument);
}

TEST_CASE("classification protocol nails linearly separable embeddings") {
    // one-hot embeddings by category: any split trains a perfect classifier
    std::vector<std::vector<double>> rows;
    std::vector<int> labels;
    for (int i = 0; i < 12; ++i) {
        const int cat = i % 3;
        std::vector<double> row(3, 0.0);
        row[std::size_t(cat)] = 1.0;
        rows.push_back(row);
        labels.push_back(cat);
    }
    const EmbeddingSet emb = embeddings_from_rows(rows);
    const ClassificationReport rep = classification_protocol(emb, labels, 5);
    REQUIRE(rep.per_split.size() == 10);
    CHECK(rep.micro_f1 == doctest::Approx(1.0));
    CHECK(rep.macro_f1 == doctest::Approx(1.0));

    // reported means match the per-split table
    double micro_sum = 0.0;
    for (const auto& s : rep.per_split) micro_sum += s.micro;
    CHECK(rep.micro_f1 == doctest::Approx(micro_sum / 10.0).epsilon(1e-12));

    CHECK_THROWS_AS(classification_protocol(emb, {0, 1}, 5), std::invalid_argument);
}

TEST_CASE("coappearance rows are lead-type distributions") {
    // types: 0 and 1 for nodes {0,1} and {2}, 2 unused
    Corpus corpus;
    corpus.entries = {{{0, 1}, 1}, {{0, 2}, 3}};
    const std::vector<int> types = {0, 0, 1};
    const CoappearanceTable t = coappearance_distribution(corpus, types, 3);
    CHECK(t.type_count == 3);
    CHECK(t.row_types == std::vector<int>{0});
    REQUIRE(t.row(0) != nullptr);
    CHECK(t.row(1) == nullptr);
    CHECK(t.row(2) == nullptr);
    // counts weight the windows: type-0 coappearance 1, type-1 coappearance 3
    CHECK((*t.row(0))[0] == doctest::Approx(0.25).epsilon(1e-12));
    CHECK((*t.row(0))[1] == doctest::Approx(0.75).epsilon(1e-12));
    CHECK((*t.row(0))[2] == doctest::Approx(0.0));
}

TEST_CASE("coappearance rows sum to one and cover all lead types") {
    Corpus corpus;
    corpus.entries = {{{4, 0, 1}, 1}, {{0, 4, 5}, 1}};
    // node 4 type 1 (hub), nodes 0..3 type 0, node 5 type 2
    const std::vector<int> types = {0, 0, 0, 0, 1, 2};
    const CoappearanceTable t = coappearance_distribution(corpus, types, 3);
    CHECK(t.row_types == std::vector<int>{0, 1});
    REQUIRE(t.row(0) != nullptr);
    CHECK((*t.row(0))[1] == doctest::Approx(0.5));
    CHECK((*t.row(0))[2] == doctest::Approx(0.5));
    REQUIRE(t.row(1) != nullptr);
    CHECK((*t.row(1))[0] == doctest::Approx(1.0));
    for (const auto& row : t.proportions) {
        double sum = 0.0;
        for (double v : row) sum += v;
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("coappearance input validation") {
    Corpus corpus;
    corpus.entries = {{{0, 1}, 1}};
    CHECK_THROWS_AS(coappearance_distribution(corpus, {0, 1}, 0), std::invalid_argument);
    CHECK_THROWS_AS(coappearance_distribution(Corpus{}, {0, 1}, 2), std::invalid_argument);
    CHECK_THROWS_AS(coappearance_distribution(corpus, {0, 5}, 2),
                    std::invalid_argument);  // type out of range
    CHECK_THROWS_AS(coappearance_distribution(corpus, {0}, 2),
                    std::invalid_argument);  // node 1 untyped
    Corpus bad;
    bad.entries = {{{0}, 1}};
    CHECK_THROWS_AS(coappearance_distribution(bad, {0, 1}, 2), std::invalid_argument);
}

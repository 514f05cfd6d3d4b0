#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "argew/graph.hpp"
#include "argew/rng.hpp"
#include "argew/walks.hpp"

using namespace argew;

namespace {

WalkConfig config_with(double p, double q, WalkStrategy strategy = WalkStrategy::Node2vec) {
    WalkConfig c;
    c.strategy = strategy;
    c.p = p;
    c.q = q;
    return c;
}

// Hub 1 with neighbors {0,2,3,4}; 0 is "prev" and shares an edge with 2 only.
WeightedGraph biased_step_graph() {
    return build_graph({{0, 1, 1.0}, {1, 2, 2.0}, {1, 3, 1.0}, {1, 4, 3.0}, {0, 2, 1.0}});
}

WeightedGraph weighted_triangle() {
    return build_graph({{0, 1, 1.0}, {0, 2, 3.0}, {1, 2, 2.0}});
}

WeightedGraph random_unweighted(std::uint64_t seed) {
    auto gen = rng::stream(seed, 0x756e7774);
    std::uniform_int_distribution<std::size_t> size_dist(3, 30);
    const std::size_t n = size_dist(gen);
    std::uniform_real_distribution<double> edge_dist(0.0, 1.0);
    std::vector<WeightedEdge> edges;
    for (NodeId u = 0; u < n; ++u) {
        for (NodeId v = u + 1; v < n; ++v) {
            if (edge_dist(gen) < 0.3) edges.push_back({u, v, 1.0});
        }
    }
    if (edges.empty()) edges.push_back({0, 1, 1.0});
    return build_graph(edges);
}

}  // namespace

TEST_CASE("config validation bounds") {
    WalkConfig c;
    CHECK_NOTHROW(c.validate());
    c.p = 0.0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = WalkConfig{};
    c.q = -2.0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = WalkConfig{};
    c.walk_length = 0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = WalkConfig{};
    c.walks_per_node = 0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = WalkConfig{};
    c.context_size = 1;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("first step uses raw edge weights") {
    const WeightedGraph g = biased_step_graph();
    const WalkConfig c = config_with(2.0, 0.5);
    const TransitionWeights w = transition_weights_node2vec(g, std::nullopt, 1, c);
    REQUIRE(w.size() == 4);
    CHECK(w[0] == std::pair<NodeId, double>{0, 1.0});
    CHECK(w[1] == std::pair<NodeId, double>{2, 2.0});
    CHECK(w[2] == std::pair<NodeId, double>{3, 1.0});
    CHECK(w[3] == std::pair<NodeId, double>{4, 3.0});
}

TEST_CASE("second-order bias reproduces the worked example") {
    // from hub 1 with prev 0, p=2, q=0.5:
    //   back to 0: w/p = 0.5; to 2 (0's neighbour): w = 2;
    //   to 3: w/q = 2; to 4: w/q = 6
    const WeightedGraph g = biased_step_graph();
    const WalkConfig c = config_with(2.0, 0.5);
    const TransitionWeights w = transition_weights_node2vec(g, 0, 1, c);
    REQUIRE(w.size() == 4);
    CHECK(w[0].second == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(w[1].second == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(w[2].second == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(w[3].second == doctest::Approx(6.0).epsilon(1e-15));
}

TEST_CASE("p=q=1 leaves raw weights untouched for both strategies") {
    const WeightedGraph g = biased_step_graph();
    for (auto strategy : {WalkStrategy::Node2vec, WalkStrategy::Node2vecPlus}) {
        const WalkConfig c = config_with(1.0, 1.0, strategy);
        const TransitionWeights w = transition_weights(g, 0, 1, c);
        REQUIRE(w.size() == 4);
        CHECK(w[0].second == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(w[1].second == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(w[2].second == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(w[3].second == doctest::Approx(3.0).epsilon(1e-12));
    }
}

TEST_CASE("weight-aware bias on the worked triangle") {
    // triangle 0-1 (w 1, loose), 0-2 (w 3, tight), 1-2 (w 2, loose);
    // avg incident weights 2.0 / 1.5 / 2.5
    const WeightedGraph g = weighted_triangle();

    SUBCASE("tight prev-candidate edge keeps the raw weight") {
        const WalkConfig c = config_with(3.0, 5.0, WalkStrategy::Node2vecPlus);
        const TransitionWeights w = transition_weights_node2vecplus(g, 0, 1, c);
        REQUIRE(w.size() == 2);
        CHECK(w[0].first == 0);  // back to prev: w/p
        CHECK(w[0].second == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
        CHECK(w[1].first == 2);  // (0,2) tight -> full weight
        CHECK(w[1].second == doctest::Approx(2.0).epsilon(1e-12));
    }

    SUBCASE("doubly loose candidate scales by min(1, 1/q)") {
        WalkConfig c = config_with(1.0, 2.0, WalkStrategy::Node2vecPlus);
        // from 2 with prev 0: candidate 1 has (0,1) loose and (2,1) loose
        TransitionWeights w = transition_weights_node2vecplus(g, 0, 2, c);
        REQUIRE(w.size() == 2);
        CHECK(w[0].second == doctest::Approx(3.0).epsilon(1e-12));  // back to prev, p=1
        CHECK(w[1].second == doctest::Approx(0.5 * 2.0).epsilon(1e-12));

        c.q = 0.5;  // min(1, 1/q) caps at 1: no boost beyond the raw weight
        w = transition_weights_node2vecplus(g, 0, 2, c);
        CHECK(w[1].second == doctest::Approx(2.0).epsilon(1e-12));
    }

    SUBCASE("loose prev edge over a tight current edge interpolates") {
        // from 0 with prev 1, candidate 2: (1,2) loose but (0,2) tight;
        // blend = 1/q + (1 - 1/q) * w(2,1)/max(avg(2), avg(1)) = 0.8 + 0.2/q
        const WalkConfig c = config_with(4.0, 2.0, WalkStrategy::Node2vecPlus);
        const TransitionWeights w = transition_weights_node2vecplus(g, 1, 0, c);
        REQUIRE(w.size() == 2);
        CHECK(w[0].first == 1);
        CHECK(w[0].second == doctest::Approx(0.25).epsilon(1e-12));
        CHECK(w[1].first == 2);
        CHECK(w[1].second == doctest::Approx((0.8 + 0.2 / 2.0) * 3.0).epsilon(1e-12));
    }
}

TEST_CASE("weight-aware strategy equals the classic one on unweighted graphs") {
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
        const WeightedGraph g = random_unweighted(seed);
        const WalkConfig classic = config_with(2.0, 0.5, WalkStrategy::Node2vec);
        const WalkConfig plus = config_with(2.0, 0.5, WalkStrategy::Node2vecPlus);
        for (NodeId v = 0; v < g.node_count(); ++v) {
            if (g.degree(v) == 0) continue;
            const TransitionWeights base = transition_weights(g, std::nullopt, v, classic);
            const TransitionWeights ext = transition_weights(g, std::nullopt, v, plus);
            REQUIRE(base.size() == ext.size());
            for (std::size_t i = 0; i < base.size(); ++i) {
                CHECK(std::abs(base[i].second - ext[i].second) <= 1e-12);
            }
            for (const auto& nb : g.neighbors(v)) {
                const TransitionWeights a = transition_weights(g, nb.id, v, classic);
                const TransitionWeights b = transition_weights(g, nb.id, v, plus);
                REQUIRE(a.size() == b.size());
                for (std::size_t i = 0; i < a.size(); ++i) {
                    CHECK(a[i].first == b[i].first);
                    CHECK(std::abs(a[i].second - b[i].second) <= 1e-12);
                }
            }
        }
    }
}

TEST_CASE("transition weight preconditions") {
    const WeightedGraph g = build_graph({{0, 1, 1.0}, {2, 3, 1.0}, {0, 4, 1.0}});
    const WalkConfig c = config_with(1.0, 1.0);
    // 2 is not a neighbour of 0
    CHECK_THROWS_AS(transition_weights(g, 2, 0, c), std::invalid_argument);
    const WeightedGraph with_isolated = build_graph({{0, 1, 1.0}, {0, 3, 1.0}});
    CHECK_THROWS_AS(transition_weights(with_isolated, std::nullopt, 2, c),
                    std::invalid_argument);
}

TEST_CASE("sample_next empirical frequencies match normalized weights") {
    const WeightedGraph g = biased_step_graph();
    const WalkConfig c = config_with(2.0, 0.5);
    auto gen = rng::stream(99);
    std::map<NodeId, int> counts;
    const int trials = 10000;
    for (int i = 0; i < trials; ++i) {
        counts[sample_next(g, 0, 1, c, gen)]++;
    }
    // normalized (0.5, 2, 2, 6) / 10.5
    const std::map<NodeId, double> expect = {
        {0, 0.5 / 10.5}, {2, 2.0 / 10.5}, {3, 2.0 / 10.5}, {4, 6.0 / 10.5}};
    for (const auto& [node, prob] : expect) {
        CHECK(std::abs(double(counts[node]) / trials - prob) <= 0.02);
    }
}

TEST_CASE("walks follow edges and have the configured length") {
    const WeightedGraph g = weighted_triangle();
    WalkConfig c = config_with(0.5, 2.0);
    c.walk_length = 12;
    auto gen = rng::stream(5);
    for (int rep = 0; rep < 20; ++rep) {
        const Walk walk = sample_walk(g, 0, c, gen);
        REQUIRE(walk.size() == 12);
        CHECK(walk.front() == 0);
        for (std::size_t i = 1; i < walk.size(); ++i) {
            CHECK(g.has_edge(walk[i - 1], walk[i]));
        }
    }
}

TEST_CASE("degenerate walks") {
    WalkConfig c = config_with(1.0, 1.0);
    auto gen = rng::stream(1);

    // a path of two nodes forces strict alternation
    const WeightedGraph path = build_graph({{0, 1, 1.0}});
    c.walk_length = 4;
    CHECK(sample_walk(path, 0, c, gen) == Walk{0, 1, 0, 1});

    // isolated start ends the walk immediately
    const WeightedGraph with_isolated = build_graph({{0, 1, 1.0}, {0, 3, 1.0}});
    CHECK(sample_walk(with_isolated, 2, c, gen) == Walk{2});

    c.walk_length = 1;
    CHECK(sample_walk(path, 1, c, gen) == Walk{1});
}

TEST_CASE("sample_walks covers every node and is reproducible per walk") {
    const WeightedGraph g = weighted_triangle();
    WalkConfig c = config_with(1.0, 1.0);
    c.walk_length = 6;
    c.walks_per_node = 2;
    c.seed = 1234;
    const std::vector<Walk> walks = sample_walks(g, c);
    REQUIRE(walks.size() == 6);
    for (std::size_t j = 0; j < walks.size(); ++j) {
        CHECK(walks[j].front() == NodeId(j / 2));
        // each walk can be regenerated alone from its (seed, node, rep) stream
        auto gen = rng::stream(c.seed, walks[j].front(), j % 2);
        CHECK(walks[j] == sample_walk(g, walks[j].front(), c, gen));
    }
    CHECK(walks == sample_walks(g, c));  // deterministic

    c.seed = 77;
    CHECK(walks != sample_walks(g, c));  // seed actually matters
}

TEST_CASE("window splitting") {
    CHECK(split_windows({1, 2, 3, 4, 5}, 3) ==
          std::vector<Window>{{1, 2, 3}, {2, 3, 4}, {3, 4, 5}});
    CHECK(split_windows({7}, 4).empty());
    CHECK(split_windows({1, 2}, 5) == std::vector<Window>{{1, 2}});  // short walk kept whole
    CHECK(split_windows({1, 2, 3}, 3) == std::vector<Window>{{1, 2, 3}});

    Walk long_walk(30);
    for (std::size_t i = 0; i < 30; ++i) long_walk[i] = NodeId(i % 4);
    CHECK(split_windows(long_walk, 4).size() == 27);

    CHECK_THROWS_AS(split_windows({1, 2, 3}, 1), std::invalid_argument);
}

TEST_CASE("positive pairs anchor on the first node") {
    using Pair = std::pair<NodeId, NodeId>;
    CHECK(positive_pairs({1, 2, 3, 4}) == std::vector<Pair>{{1, 2}, {1, 3}, {1, 4}});
    CHECK(positive_pairs({9, 9}) == std::vector<Pair>{{9, 9}});
    CHECK_THROWS_AS(positive_pairs({5}), std::invalid_argument);
}

TEST_CASE("pair count per walk is (L - C + 1) * (C - 1)") {
    const WeightedGraph g = weighted_triangle();
    WalkConfig c = config_with(1.0, 1.0);
    c.walk_length = 20;
    c.context_size = 5;
    auto gen = rng::stream(8);
    const Walk walk = sample_walk(g, 0, c, gen);
    std::size_t pairs = 0;
    for (const Window& w : split_windows(walk, c.context_size)) {
        pairs += positive_pairs(w).size();
    }
    CHECK(pairs == std::size_t(20 - 5 + 1) * (5 - 1));
}

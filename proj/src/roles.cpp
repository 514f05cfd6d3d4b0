#include "argew/roles.hpp"

#include <stdexcept>
#include <string>

#include "argew/augment.hpp"
#include "argew/walks.hpp"

namespace argew {

namespace {

constexpr NodeId kCommunityMembers[3][5] = {
    {0, 1, 2, 3, 4},
    {9, 10, 11, 12, 13},
    {14, 15, 16, 17, 18},
};
constexpr NodeId kBridges[3] = {4, 13, 18};
constexpr NodeId kEtcNodes[4] = {5, 6, 7, 8};

}  // namespace

std::string_view role_type_name(RoleType type) {
    switch (type) {
        case RoleType::Community4Internal: return "c4internal";
        case RoleType::Community4Bridge: return "c4bridge";
        case RoleType::Community13Internal: return "c13internal";
        case RoleType::Community13Bridge: return "c13bridge";
        case RoleType::Community18Internal: return "c18internal";
        case RoleType::Community18Bridge: return "c18bridge";
        case RoleType::Etc: return "etc";
    }
    throw std::invalid_argument("unknown role type " + std::to_string(int(type)));
}

RoleType node_role(NodeId v) {
    if (v <= 3) return RoleType::Community4Internal;
    if (v == 4) return RoleType::Community4Bridge;
    if (v <= 8) return RoleType::Etc;
    if (v <= 12) return RoleType::Community13Internal;
    if (v == 13) return RoleType::Community13Bridge;
    if (v <= 17) return RoleType::Community18Internal;
    if (v == 18) return RoleType::Community18Bridge;
    throw std::out_of_range("roles graph has 19 nodes; got node " + std::to_string(v));
}

std::vector<int> roles_by_node() {
    std::vector<int> roles(kRolesNodeCount);
    for (NodeId v = 0; v < kRolesNodeCount; ++v) roles[v] = int(node_role(v));
    return roles;
}

WeightedGraph build_roles_graph() {
    std::vector<WeightedEdge> edges;
    // Fully connected communities, weight 3.
    for (const auto& members : kCommunityMembers) {
        for (int i = 0; i < 5; ++i) {
            for (int j = i + 1; j < 5; ++j) {
                edges.push_back({members[i], members[j], 3.0});
            }
        }
    }
    // Every bridge reaches every etc node, weight 2.
    for (NodeId bridge : kBridges) {
        for (NodeId etc : kEtcNodes) {
            edges.push_back({bridge, etc, 2.0});
        }
    }
    // Each internal gets one weak etc link, round-robin, weight 1.
    for (const auto& members : kCommunityMembers) {
        for (int i = 0; i < 4; ++i) {
            edges.push_back({members[i], kEtcNodes[i], 1.0});
        }
    }
    return build_graph(edges);
}

CoappearanceTable run_coappearance_experiment(bool use_argew, double p, double q,
                                              std::uint64_t seed) {
    const WeightedGraph g = build_roles_graph();
    WalkConfig params;
    params.strategy = WalkStrategy::Node2vec;
    params.p = p;
    params.q = q;
    params.walk_length = 10;
    params.context_size = 3;
    params.walks_per_node = use_argew ? 5 : 20;
    params.seed = seed;

    std::vector<Window> windows;
    for (const Walk& walk : sample_walks(g, params)) {
        for (Window& w : split_windows(walk, params.context_size)) {
            windows.push_back(std::move(w));
        }
    }
    const Corpus corpus = use_argew ? augment_corpus(g, windows, 1.0, 9.0)
                                    : corpus_from_windows(std::move(windows));
    return coappearance_distribution(corpus, roles_by_node(), kRoleTypeCount);
}

}  // namespace argew

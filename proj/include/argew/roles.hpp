#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "argew/eval.hpp"
#include "argew/graph.hpp"

namespace argew {

// Node roles of the built-in 19-node benchmark graph: three 5-node
// communities (nodes 0-4, 9-13, 14-18) whose members are fully connected
// with weight 3, each with one designated bridge (4, 13, 18), plus a shared
// 4-node "etc" group (5-8). Bridges connect to every etc node with weight
// 2; each community internal connects to exactly one etc node (round-robin)
// with weight 1.
enum class RoleType : int {
    Community4Internal = 0,
    Community4Bridge = 1,
    Community13Internal = 2,
    Community13Bridge = 3,
    Community18Internal = 4,
    Community18Bridge = 5,
    Etc = 6,
};

inline constexpr int kRoleTypeCount = 7;
inline constexpr std::size_t kRolesNodeCount = 19;

std::string_view role_type_name(RoleType type);

RoleType node_role(NodeId v);  // throws for v >= 19

// Role of every node, as ints usable with coappearance_distribution.
std::vector<int> roles_by_node();

WeightedGraph build_roles_graph();

// Walks the roles graph (second-order biased walks, length 10, context 3;
// 20 walks per node plain, 5 when augmenting), optionally augments the
// windows (rescale range [1, 9]), and tabulates the type coappearance
// distribution. The contrast of interest: how closely each bridge row
// matches its community's internal row.
CoappearanceTable run_coappearance_experiment(bool use_argew, double p, double q,
                                              std::uint64_t seed);

}  // namespace argew

#ifndef BESTPATH_FOREST_HPP
#define BESTPATH_FOREST_HPP

#include <optional>
#include <string>
#include <vector>

#include "bestpath/common.hpp"
#include "bestpath/dataset.hpp"
#include "bestpath/mi.hpp"

namespace bestpath {

struct ForestEdge {
    int u = 0;  // u < v
    int v = 0;
    double raw_i = 0.0;
    double weight = 0.0;  // penalized mutual information
    bool infinite = false;
};

// Maximum penalized-MI spanning forest under the strong-decomposability
// constraint: within a tree, every path between two discrete nodes must pass
// through discrete nodes only.
struct Forest {
    int n_nodes = 0;
    std::vector<VariableKind> node_kinds;
    std::vector<ForestEdge> edges;               // in admission order
    std::vector<std::vector<int>> adjacency;     // neighbor lists

    int degree(int v) const { return static_cast<int>(adjacency.at(v).size()); }
};

// Kruskal over edges with positive penalized weight, sorted by
// (weight desc, node pair asc); infinite-weight edges come first. An edge
// joining two components that both contain discrete nodes is admitted only
// when both endpoints are discrete — this preserves the invariant that each
// component's discrete nodes induce a connected all-discrete subtree, which
// is exactly the forbidden-path condition.
Forest build_forest(const MITable& table, const std::vector<VariableKind>& kinds,
                    Penalty penalty);

// Connected components as sorted index lists, ordered by smallest member.
std::vector<std::vector<int>> components(const Forest& f);

// Graphviz rendering: discrete nodes yellow, continuous green, the optional
// target red.
std::string export_dot(const Forest& f, const std::vector<std::string>& names,
                       std::optional<int> target = std::nullopt);

// {"nodes":[{"name","kind"}],"edges":[{"u","v","i","penalized"}]} with node
// names in edge endpoints. Infinite weights serialize as null plus an
// "infinite": true marker (JSON has no infinity literal).
std::string export_forest_json(const Forest& f,
                               const std::vector<std::string>& names);

}  // namespace bestpath

#endif

#include "bestpath/forest.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "json.hpp"

namespace bestpath {

namespace {

// Union-find over nodes, each root carrying whether its component contains a
// discrete node.
class DisjointSets {
public:
    DisjointSets(int n, const std::vector<VariableKind>& kinds)
        : parent_(static_cast<std::size_t>(n)),
          rank_(static_cast<std::size_t>(n), 0),
          has_discrete_(static_cast<std::size_t>(n)) {
        std::iota(parent_.begin(), parent_.end(), 0);
        for (int i = 0; i < n; ++i) {
            has_discrete_[static_cast<std::size_t>(i)] =
                kinds[static_cast<std::size_t>(i)] == VariableKind::Discrete;
        }
    }

    int find(int x) {
        while (parent_[static_cast<std::size_t>(x)] != x) {
            parent_[static_cast<std::size_t>(x)] =
                parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(x)])];
            x = parent_[static_cast<std::size_t>(x)];
        }
        return x;
    }

    bool has_discrete(int root) const {
        return has_discrete_[static_cast<std::size_t>(root)];
    }

    void unite(int ra, int rb) {
        if (rank_[static_cast<std::size_t>(ra)] < rank_[static_cast<std::size_t>(rb)]) {
            std::swap(ra, rb);
        }
        parent_[static_cast<std::size_t>(rb)] = ra;
        has_discrete_[static_cast<std::size_t>(ra)] =
            has_discrete_[static_cast<std::size_t>(ra)] ||
            has_discrete_[static_cast<std::size_t>(rb)];
        if (rank_[static_cast<std::size_t>(ra)] == rank_[static_cast<std::size_t>(rb)]) {
            ++rank_[static_cast<std::size_t>(ra)];
        }
    }

private:
    std::vector<int> parent_;
    std::vector<int> rank_;
    std::vector<bool> has_discrete_;
};

}  // namespace

Forest build_forest(const MITable& table, const std::vector<VariableKind>& kinds,
                    Penalty penalty) {
    const int p = table.p();
    if (static_cast<int>(kinds.size()) != p) {
        throw DataError("build_forest: kinds length does not match table size");
    }

    std::vector<ForestEdge> candidates;
    for (int i = 0; i < p; ++i) {
        for (int j = i + 1; j < p; ++j) {
            const MIEstimate& e = table.at(i, j);
            const double w = e.penalized(penalty);
            if (w > 0.0) {
                candidates.push_back({i, j, e.i_value, w, e.infinite});
            }
        }
    }
    std::sort(candidates.begin(), candidates.end(),
              [](const ForestEdge& a, const ForestEdge& b) {
                  if (a.weight != b.weight) return a.weight > b.weight;
                  if (a.infinite && b.infinite && a.raw_i != b.raw_i) {
                      return a.raw_i > b.raw_i;
                  }
                  if (a.u != b.u) return a.u < b.u;
                  return a.v < b.v;
              });

    Forest f;
    f.n_nodes = p;
    f.node_kinds = kinds;
    f.adjacency.assign(static_cast<std::size_t>(p), {});

    DisjointSets dsu(p, kinds);
    for (const ForestEdge& e : candidates) {
        const int ru = dsu.find(e.u);
        const int rv = dsu.find(e.v);
        if (ru == rv) continue;
        const bool both_have_discrete = dsu.has_discrete(ru) && dsu.has_discrete(rv);
        const bool both_endpoints_discrete =
            kinds[static_cast<std::size_t>(e.u)] == VariableKind::Discrete &&
            kinds[static_cast<std::size_t>(e.v)] == VariableKind::Discrete;
        if (both_have_discrete && !both_endpoints_discrete) continue;
        dsu.unite(ru, rv);
        f.edges.push_back(e);
        f.adjacency[static_cast<std::size_t>(e.u)].push_back(e.v);
        f.adjacency[static_cast<std::size_t>(e.v)].push_back(e.u);
    }
    return f;
}

std::vector<std::vector<int>> components(const Forest& f) {
    std::vector<std::vector<int>> out;
    std::vector<bool> seen(static_cast<std::size_t>(f.n_nodes), false);
    for (int start = 0; start < f.n_nodes; ++start) {
        if (seen[static_cast<std::size_t>(start)]) continue;
        std::vector<int> comp;
        std::vector<int> stack{start};
        seen[static_cast<std::size_t>(start)] = true;
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            comp.push_back(v);
            for (int w : f.adjacency[static_cast<std::size_t>(v)]) {
                if (!seen[static_cast<std::size_t>(w)]) {
                    seen[static_cast<std::size_t>(w)] = true;
                    stack.push_back(w);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    return out;
}

namespace {

std::string dot_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

std::string export_dot(const Forest& f, const std::vector<std::string>& names,
                       std::optional<int> target) {
    if (static_cast<int>(names.size()) != f.n_nodes) {
        throw DataError("export_dot: names length does not match forest");
    }
    std::ostringstream out;
    out << "graph forest {\n";
    out << "  node [style=filled];\n";
    for (int i = 0; i < f.n_nodes; ++i) {
        const char* color =
            (target && *target == i) ? "red"
            : f.node_kinds[static_cast<std::size_t>(i)] == VariableKind::Discrete
                ? "yellow"
                : "green";
        out << "  " << dot_quote(names[static_cast<std::size_t>(i)])
            << " [fillcolor=" << color << "];\n";
    }
    for (const ForestEdge& e : f.edges) {
        char label[48];
        if (e.infinite) {
            std::snprintf(label, sizeof(label), "inf");
        } else {
            std::snprintf(label, sizeof(label), "%.3f", e.weight);
        }
        out << "  " << dot_quote(names[static_cast<std::size_t>(e.u)]) << " -- "
            << dot_quote(names[static_cast<std::size_t>(e.v)]) << " [label=\""
            << label << "\"];\n";
    }
    out << "}\n";
    return out.str();
}

std::string export_forest_json(const Forest& f,
                               const std::vector<std::string>& names) {
    if (static_cast<int>(names.size()) != f.n_nodes) {
        throw DataError("export_forest_json: names length does not match forest");
    }
    nlohmann::ordered_json j;
    j["nodes"] = nlohmann::ordered_json::array();
    for (int i = 0; i < f.n_nodes; ++i) {
        j["nodes"].push_back(
            {{"name", names[static_cast<std::size_t>(i)]},
             {"kind", to_string(f.node_kinds[static_cast<std::size_t>(i)])}});
    }
    j["edges"] = nlohmann::ordered_json::array();
    for (const ForestEdge& e : f.edges) {
        nlohmann::ordered_json je;
        je["u"] = names[static_cast<std::size_t>(e.u)];
        je["v"] = names[static_cast<std::size_t>(e.v)];
        if (e.infinite) {
            je["i"] = nullptr;
            je["penalized"] = nullptr;
            je["infinite"] = true;
        } else {
            je["i"] = e.raw_i;
            je["penalized"] = e.weight;
        }
        j["edges"].push_back(je);
    }
    return j.dump(2) + "\n";
}

}  // namespace bestpath

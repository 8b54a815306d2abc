#include "bestpath/pathsteps.hpp"

#include <algorithm>
#include <deque>

namespace bestpath {

PathSteps path_steps(const Forest& f, int target) {
    if (target < 0 || target >= f.n_nodes) {
        throw DataError("path_steps: target index out of range");
    }
    PathSteps ps;
    ps.target = target;
    ps.distances.assign(f.n_nodes, std::nullopt);
    ps.distances[target] = 0;

    std::deque<int> queue{target};
    int max_d = 0;
    while (!queue.empty()) {
        const int v = queue.front();
        queue.pop_front();
        const int d = *ps.distances[v];
        max_d = std::max(max_d, d);
        for (int w : f.adjacency[v]) {
            if (!ps.distances[w]) {
                ps.distances[w] = d + 1;
                queue.push_back(w);
            }
        }
    }

    ps.steps.reserve(max_d);
    for (int k = 1; k <= max_d; ++k) {
        std::vector<int> step;
        for (int j = 0; j < f.n_nodes; ++j) {
            if (j != target && ps.distances[j] && *ps.distances[j] <= k) {
                step.push_back(j);
            }
        }
        ps.steps.push_back(std::move(step));
    }
    return ps;
}

std::vector<double> mi_sum_profile(const PathSteps& ps, const MITable& table) {
    std::vector<double> profile;
    profile.reserve(ps.steps.size());
    for (const std::vector<int>& step : ps.steps) {
        double sum = 0.0;
        for (int j : step) sum += table.at(ps.target, j).i_value;
        profile.push_back(sum);
    }
    return profile;
}

int mi_plateau_diagnostic(const std::vector<double>& profile, double rel_tol) {
    if (profile.empty()) {
        throw DataError("mi_plateau_diagnostic: empty profile");
    }
    const double total = profile.back();
    if (total <= 0.0) return 1;
    for (int k = 1; k <= static_cast<int>(profile.size()); ++k) {
        if ((total - profile[k - 1]) / total <= rel_tol) return k;
    }
    return static_cast<int>(profile.size());
}

}  // namespace bestpath

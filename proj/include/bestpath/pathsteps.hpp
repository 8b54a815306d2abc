#ifndef BESTPATH_PATHSTEPS_HPP
#define BESTPATH_PATHSTEPS_HPP

#include <optional>
#include <vector>

#include "bestpath/forest.hpp"

namespace bestpath {

// Nested neighborhoods of the target inside its tree. distances[j] is the
// edge count of the unique target-to-j path (absent outside the component);
// steps[k-1] holds every node with distance in [1, k], sorted by index.
struct PathSteps {
    int target = 0;
    std::vector<std::optional<int>> distances;
    std::vector<std::vector<int>> steps;

    int max_distance() const { return static_cast<int>(steps.size()); }
};

// Breadth-first distances from the target; an isolated target yields an
// empty step list.
PathSteps path_steps(const Forest& f, int target);

// Entry k-1 = sum of raw mutual information I(target, j) over j in step k.
// Non-decreasing since every I is non-negative.
std::vector<double> mi_sum_profile(const PathSteps& ps, const MITable& table);

// Smallest k whose MI-sum shortfall relative to the final step is within
// rel_tol (reported as a diagnostic; never overrides the CV-based choice).
int mi_plateau_diagnostic(const std::vector<double>& profile,
                          double rel_tol = 0.05);

}  // namespace bestpath

#endif

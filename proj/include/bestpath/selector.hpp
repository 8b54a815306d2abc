#ifndef BESTPATH_SELECTOR_HPP
#define BESTPATH_SELECTOR_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "bestpath/common.hpp"
#include "bestpath/crossval.hpp"
#include "bestpath/dataset.hpp"
#include "bestpath/forest.hpp"
#include "bestpath/linmodel.hpp"
#include "bestpath/pathsteps.hpp"

namespace bestpath {

// Step-4 pruning flavor. Backward removes the worst insignificant regressor
// one at a time and refits; single-pass drops every insignificant regressor
// of the initial fit at once (one refit).
enum class PruneMode { Backward, SinglePass };

std::string to_string(PruneMode m);
PruneMode parse_prune_mode(const std::string& s);

struct SelectorConfig {
    Penalty penalty = Penalty::Bic;
    PenaltyStyle penalty_style = PenaltyStyle::Paper;
    VarianceModel variance_model = VarianceModel::Homogeneous;
    int folds = 10;
    std::uint64_t seed = 42;
    double alpha = 0.1;
    PruneMode prune_mode = PruneMode::Backward;
    double plateau_tol = 0.05;
    int threads = 1;
};

struct StepScore {
    int k = 0;
    std::vector<std::string> vars;
    double mi_sum = 0.0;
    double cv_mse = 0.0;
    double cv_rmse = 0.0;
    double cv_r2_adjusted = 0.0;
    double r2_adjusted_full = 0.0;  // full-data fit, for the inequality diagnostics
    bool failed = false;
    std::string failure_reason;
};

enum class SelectionStatus { Ok, NoCandidates };

struct SelectionReport {
    std::string target;
    SelectionStatus status = SelectionStatus::Ok;
    std::vector<std::string> node_names;
    Forest forest;                       // M0
    PathSteps steps;
    std::vector<StepScore> step_scores;
    int best_step = 0;                   // 1-based; 0 when no candidates
    int mi_plateau_k = 0;
    ModelFit mw;                         // full-data fit on the best step
    ModelFit mf;                         // after significance pruning
    std::vector<std::string> mw_vars;    // dataset-level variable names
    std::vector<std::string> mf_vars;
    std::vector<std::string> warnings;
};

// The full pipeline: MI table -> forest -> path steps -> CV-scored OLS per
// step -> best step by cv_r2_adjusted (ties to the smaller step) -> p-value
// pruning at alpha. Steps whose designs go singular in some fold are skipped
// with a warning; if every step fails, NumericalError.
SelectionReport select(const Dataset& ds, const std::string& target,
                       const SelectorConfig& config);

// Drop insignificant regressors from `vars` (grouped dummies share their
// group's minimum p-value) and return the surviving dataset-level names.
// Used by select(); exposed for direct testing.
std::vector<std::string> prune_insignificant(const Dataset& ds,
                                             const std::string& response,
                                             std::vector<std::string> vars,
                                             double alpha, PruneMode mode);

}  // namespace bestpath

#endif

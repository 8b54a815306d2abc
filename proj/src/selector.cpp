#include "bestpath/selector.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "bestpath/mi.hpp"
#include "bestpath/parallel.hpp"

namespace bestpath {

std::string to_string(PruneMode m) {
    return m == PruneMode::Backward ? "backward" : "single_pass";
}

PruneMode parse_prune_mode(const std::string& s) {
    if (s == "backward") return PruneMode::Backward;
    if (s == "single_pass" || s == "single-pass") return PruneMode::SinglePass;
    throw DataError("unknown prune mode '" + s +
                    "' (expected backward or single_pass)");
}

namespace {

// Per-regressor p-value: a continuous regressor keeps its column's p; a
// dummy-coded group takes the minimum over its columns, so the group
// survives if any level contrast is significant.
std::vector<double> group_p_values(const ModelFit& fit, const Design& design,
                                   int n_vars) {
    std::vector<double> p(n_vars, 1.0);
    std::vector<bool> seen(n_vars, false);
    for (int col = 1; col < static_cast<int>(fit.p_values.size()); ++col) {
        const int v = design.source_var[col];
        if (!seen[v] || fit.p_values[col] < p[v]) {
            p[v] = fit.p_values[col];
            seen[v] = true;
        }
    }
    return p;
}

}  // namespace

std::vector<std::string> prune_insignificant(const Dataset& ds,
                                             const std::string& response,
                                             std::vector<std::string> vars,
                                             double alpha, PruneMode mode) {
    if (mode == PruneMode::SinglePass) {
        if (vars.empty()) return vars;
        const Design d = design_matrix(ds, response, vars);
        const ModelFit fit = ols_fit(d);
        const std::vector<double> p = group_p_values(fit, d, static_cast<int>(vars.size()));
        std::vector<std::string> kept;
        for (int v = 0; v < static_cast<int>(vars.size()); ++v) {
            if (p[v] <= alpha) kept.push_back(vars[v]);
        }
        return kept;
    }

    // Backward: repeatedly drop the regressor with the largest p-value above
    // alpha, refitting in between; at most |vars| refits.
    while (!vars.empty()) {
        const Design d = design_matrix(ds, response, vars);
        const ModelFit fit = ols_fit(d);
        const std::vector<double> p = group_p_values(fit, d, static_cast<int>(vars.size()));
        int worst = -1;
        for (int v = 0; v < static_cast<int>(vars.size()); ++v) {
            if (p[v] > alpha && (worst < 0 || p[v] > p[worst])) worst = v;
        }
        if (worst < 0) break;
        vars.erase(vars.begin() + worst);
    }
    return vars;
}

SelectionReport select(const Dataset& ds, const std::string& target,
                       const SelectorConfig& config) {
    const int ti = ds.index_of(target);
    if (ds.col(ti).kind != VariableKind::Continuous) {
        throw DataError("target '" + target +
                        "' is discrete; the pipeline requires a continuous target");
    }

    SelectionReport rep;
    rep.target = target;
    rep.node_names = ds.names();

    // Step 0: penalized-MI forest over all variables.
    const MITable table = mi_matrix(ds, config.variance_model, config.penalty_style);
    std::vector<VariableKind> kinds;
    kinds.reserve(ds.p());
    for (const Column& c : ds.cols()) kinds.push_back(c.kind);
    rep.forest = build_forest(table, kinds, config.penalty);

    // Step 1: nested path steps around the target.
    rep.steps = path_steps(rep.forest, ti);
    if (rep.steps.steps.empty()) {
        rep.status = SelectionStatus::NoCandidates;
        rep.warnings.push_back("target '" + target +
                               "' is isolated in the forest: no candidates in "
                               "the target's tree");
        return rep;
    }

    const std::vector<double> profile = mi_sum_profile(rep.steps, table);
    rep.mi_plateau_k = mi_plateau_diagnostic(profile, config.plateau_tol);

    // Step 2: score every step with a full-data fit and k-fold CV. The same
    // seed is used for each step, so every step sees identical folds.
    const int n_steps = rep.steps.max_distance();
    rep.step_scores.assign(n_steps, {});
    parallel_for(n_steps, config.threads, [&](int s) {
        StepScore& score = rep.step_scores[s];
        score.k = s + 1;
        for (int j : rep.steps.steps[s]) score.vars.push_back(rep.node_names[j]);
        score.mi_sum = profile[s];
        try {
            const ModelFit full = ols_fit(design_matrix(ds, target, score.vars));
            score.r2_adjusted_full = full.r2_adjusted;
            const CVResult cv =
                kfold_cv(ds, target, score.vars, config.folds, config.seed);
            if (cv.failed) {
                score.failed = true;
                score.failure_reason = cv.failure_reason;
            } else {
                score.cv_mse = cv.cv_mse;
                score.cv_rmse = cv.cv_rmse;
                score.cv_r2_adjusted = cv.cv_r2_adjusted;
            }
        } catch (const NumericalError& e) {
            score.failed = true;
            score.failure_reason = e.what();
        }
    });

    // Step 3: the best step maximizes cv_r2_adjusted; ties go to the smaller
    // (more parsimonious) step.
    int best = -1;
    for (int s = 0; s < n_steps; ++s) {
        const StepScore& sc = rep.step_scores[s];
        if (sc.failed) {
            rep.warnings.push_back("path step " + std::to_string(sc.k) +
                                   " skipped: " + sc.failure_reason);
            continue;
        }
        if (best < 0 ||
            sc.cv_r2_adjusted > rep.step_scores[best].cv_r2_adjusted) {
            best = s;
        }
    }
    if (best < 0) {
        throw NumericalError("every path step failed cross-validation");
    }
    rep.best_step = best + 1;

    // Diagnostic counterpart of the monotone-fit heuristic: the chosen step
    // should not fit notably worse (full data) than its predecessor.
    if (best >= 1 && !rep.step_scores[best - 1].failed) {
        const double drop = rep.step_scores[best - 1].r2_adjusted_full -
                            rep.step_scores[best].r2_adjusted_full;
        if (drop > 0.02) {
            rep.warnings.push_back(
                "full-data adjusted R^2 of best step " +
                std::to_string(rep.best_step) + " is " + std::to_string(drop) +
                " below step " + std::to_string(rep.best_step - 1));
        }
    }

    rep.mw_vars = rep.step_scores[best].vars;
    rep.mw = ols_fit(design_matrix(ds, target, rep.mw_vars));

    // Step 4: significance pruning.
    rep.mf_vars = prune_insignificant(ds, target, rep.mw_vars, config.alpha,
                                      config.prune_mode);
    rep.mf = ols_fit(design_matrix(ds, target, rep.mf_vars));

    // Containment M_f subset of M_w subset of the target's component, by
    // construction; verified on every run.
    {
        const std::set<std::string> in_w(rep.mw_vars.begin(), rep.mw_vars.end());
        for (const std::string& v : rep.mf_vars) {
            if (!in_w.count(v)) {
                throw NumericalError("internal invariant violated: pruned model "
                                     "contains '" + v + "' outside the best step");
            }
        }
        std::set<std::string> in_component;
        for (int j = 0; j < ds.p(); ++j) {
            if (j != ti && rep.steps.distances[j]) {
                in_component.insert(rep.node_names[j]);
            }
        }
        for (const std::string& v : rep.mw_vars) {
            if (!in_component.count(v)) {
                throw NumericalError("internal invariant violated: best step "
                                     "contains '" + v + "' outside the target's tree");
            }
        }
    }
    return rep;
}

}  // namespace bestpath

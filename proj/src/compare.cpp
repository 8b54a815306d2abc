#include <cmath>
#include <cstdio>
#include <sstream>

#include "bestpath/lasso.hpp"
#include "bestpath/parallel.hpp"

namespace bestpath {

namespace {

double test_mse(const Eigen::VectorXd& y, const Eigen::VectorXd& yhat) {
    return (y - yhat).squaredNorm() / static_cast<double>(y.size());
}

std::vector<std::string> non_target_names(const Dataset& ds,
                                          const std::string& target) {
    std::vector<std::string> out;
    for (const Column& c : ds.cols()) {
        if (c.name != target) out.push_back(c.name);
    }
    return out;
}

}  // namespace

CompareResult compare_predictions(const Dataset& ds, const std::string& target,
                                  const CompareConfig& config) {
    const int ti = ds.index_of(target);
    if (ds.col(ti).kind != VariableKind::Continuous) {
        throw DataError("target '" + target + "' must be continuous");
    }

    CompareResult result;
    const std::vector<Split> splits = train_test_splits(
        ds.n(), config.train_frac, config.repeats, config.seed);

    // Paper-style protocol: variable selection happens once, on all rows.
    std::vector<std::string> fixed_vars;
    if (config.paper_mode) {
        SelectorConfig sel = config.selector;
        sel.threads = 1;
        const SelectionReport rep = select(ds, target, sel);
        if (rep.status != SelectionStatus::Ok) {
            throw NumericalError("paper mode: selection on the full data found "
                                 "no candidates for '" + target + "'");
        }
        fixed_vars = rep.mf_vars;
        result.bestpath_vars_full = fixed_vars;
    }

    const std::vector<std::string> lasso_vars = non_target_names(ds, target);
    const SplitMix64 base(config.seed);

    struct SlotResult {
        bool ok = false;
        std::string error;
        CompareRow row;
    };
    std::vector<SlotResult> slots(config.repeats);

    parallel_for(config.repeats, config.threads, [&](int r) {
        SlotResult& slot = slots[r];
        slot.row.split = r + 1;
        try {
            const Dataset dtrain = ds.subset(splits[r].train);
            const Dataset dtest = ds.subset(splits[r].test);
            const int yi = dtest.index_of(target);
            const Eigen::VectorXd ytest = Eigen::Map<const Eigen::VectorXd>(
                dtest.col(yi).values.data(), dtest.n());

            // Substream seed for everything stochastic inside this split.
            SplitMix64 sub = base.split(static_cast<std::uint64_t>(r));
            const std::uint64_t inner_seed = sub.next();

            // Best-path arm.
            std::vector<std::string> bp_vars;
            if (config.paper_mode) {
                bp_vars = fixed_vars;
            } else {
                SelectorConfig sel = config.selector;
                sel.seed = inner_seed;
                sel.threads = 1;
                const SelectionReport rep = select(dtrain, target, sel);
                if (rep.status != SelectionStatus::Ok) {
                    throw NumericalError("no candidates in the target's tree");
                }
                bp_vars = rep.mf_vars;
            }
            const ModelFit bp_fit =
                ols_fit(design_matrix(dtrain, target, bp_vars));
            const Eigen::VectorXd bp_pred =
                predict(bp_fit, design_matrix(dtest, target, bp_vars).X);
            slot.row.mse_bestpath = test_mse(ytest, bp_pred);

            // LASSO arm: every non-target variable offered.
            const LassoCVResult lcv =
                lasso_cv(dtrain, target, lasso_vars, config.selector.folds,
                         inner_seed, config.lasso_grid_size);
            const Design dtest_design = design_matrix(dtest, target, lasso_vars);
            const Eigen::MatrixXd Xtest =
                dtest_design.X.rightCols(dtest_design.X.cols() - 1);
            const Eigen::VectorXd la_pred =
                (Xtest * lcv.best.coefficients).array() + lcv.best.intercept;
            slot.row.mse_lasso = test_mse(ytest, la_pred);

            slot.row.winner = slot.row.mse_bestpath < slot.row.mse_lasso
                                  ? "bestpath"
                              : slot.row.mse_lasso < slot.row.mse_bestpath
                                  ? "lasso"
                                  : "tie";
            slot.ok = true;
        } catch (const std::exception& e) {
            slot.error = e.what();
        }
    });

    for (const SlotResult& slot : slots) {
        if (!slot.ok) {
            ++result.n_failed;
            result.failures.push_back("split " + std::to_string(slot.row.split) +
                                      " failed: " + slot.error);
            continue;
        }
        result.rows.push_back(slot.row);
        if (slot.row.winner == "bestpath") {
            ++result.wins_bestpath;
        } else if (slot.row.winner == "lasso") {
            ++result.wins_lasso;
        } else {
            ++result.ties;
        }
    }
    return result;
}

std::string compare_csv(const CompareResult& result) {
    std::ostringstream out;
    out << "split,mse_bestpath,mse_lasso,winner\n";
    for (const CompareRow& row : result.rows) {
        char buf[96];
        std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g,", row.split,
                      row.mse_bestpath, row.mse_lasso);
        out << buf << row.winner << "\n";
    }
    return out.str();
}

}  // namespace bestpath

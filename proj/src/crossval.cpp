#include "bestpath/crossval.hpp"

#include <algorithm>
#include <cmath>

#include "bestpath/common.hpp"
#include "bestpath/linmodel.hpp"
#include "bestpath/stats.hpp"

namespace bestpath {

std::vector<std::vector<int>> make_folds(int n, int folds, SplitMix64& rng) {
    if (folds < 1 || folds > n) {
        throw DataError("make_folds: need 1 <= folds <= n");
    }
    const std::vector<int> perm = shuffled_indices(n, rng);
    std::vector<std::vector<int>> out(folds);
    for (int i = 0; i < n; ++i) {
        out[i % folds].push_back(perm[i]);
    }
    for (std::vector<int>& fold : out) std::sort(fold.begin(), fold.end());
    return out;
}

CVResult kfold_cv(const Dataset& ds, const std::string& response,
                  const std::vector<std::string>& regressors, int folds,
                  std::uint64_t seed) {
    const int n = ds.n();
    if (folds < 2) throw DataError("kfold_cv: need at least 2 folds");
    if (n < 2 * folds) {
        throw DataError("kfold_cv: need n >= 2*folds (n=" + std::to_string(n) +
                        ", folds=" + std::to_string(folds) + ")");
    }

    CVResult res;
    res.folds = folds;
    res.seed = seed;

    const Design full = design_matrix(ds, response, regressors);
    const double ybar = full.y.mean();
    const double tss = (full.y.array() - ybar).square().sum();
    if (tss <= 0.0) {
        throw NumericalError("kfold_cv: response has zero variance");
    }
    const double c = (n - 1) / tss;

    SplitMix64 rng(seed);
    const std::vector<std::vector<int>> fold_rows = make_folds(n, folds, rng);

    std::vector<double> fold_r2;
    std::vector<double> fold_rmse;
    for (int f = 0; f < folds; ++f) {
        const std::vector<int>& val = fold_rows[f];
        std::vector<char> in_val(n, 0);
        for (int r : val) in_val[r] = 1;

        const int n_train = n - static_cast<int>(val.size());
        Eigen::MatrixXd Xtr(n_train, full.X.cols());
        Eigen::VectorXd ytr(n_train);
        int t = 0;
        for (int r = 0; r < n; ++r) {
            if (!in_val[r]) {
                Xtr.row(t) = full.X.row(r);
                ytr[t] = full.y[r];
                ++t;
            }
        }

        ModelFit fit;
        try {
            fit = ols_fit(Xtr, ytr, full.col_names);
        } catch (const NumericalError& e) {
            res.failed = true;
            res.failure_reason = "fold " + std::to_string(f + 1) + ": " + e.what();
            return res;
        }

        const Eigen::VectorXd beta = fit.beta();
        std::vector<double> pred, obs;
        pred.reserve(val.size());
        obs.reserve(val.size());
        double sse = 0.0;
        for (int r : val) {
            const double yhat = full.X.row(r).dot(beta);
            pred.push_back(yhat);
            obs.push_back(full.y[r]);
            sse += (full.y[r] - yhat) * (full.y[r] - yhat);
        }
        fold_rmse.push_back(std::sqrt(sse / val.size()));

        // Correlation is undefined when either side is constant within the
        // fold; such folds are excluded from the r2 average.
        if (variance_ml(pred) > 0.0 && variance_ml(obs) > 0.0) {
            const double rho = pearson_correlation(pred, obs);
            fold_r2.push_back(rho * rho);
        }
    }

    res.cv_rmse = mean(fold_rmse);
    res.cv_r2_adjusted = fold_r2.empty() ? 0.0 : mean(fold_r2);
    res.cv_mse = (1.0 - res.cv_r2_adjusted) / c;
    return res;
}

std::vector<Split> train_test_splits(int n, double train_frac, int repeats,
                                     std::uint64_t seed) {
    if (!(train_frac > 0.0 && train_frac < 1.0)) {
        throw DataError("train_test_splits: train_frac must be in (0, 1)");
    }
    if (repeats < 1) throw DataError("train_test_splits: repeats must be >= 1");
    const int n_train = static_cast<int>(std::lround(train_frac * n));
    if (n_train < 1 || n_train >= n) {
        throw DataError("train_test_splits: split leaves an empty side");
    }

    const SplitMix64 base(seed);
    std::vector<Split> out;
    out.reserve(repeats);
    for (int r = 0; r < repeats; ++r) {
        SplitMix64 rng = base.split(static_cast<std::uint64_t>(r));
        const std::vector<int> perm = shuffled_indices(n, rng);
        Split s;
        s.train.assign(perm.begin(), perm.begin() + n_train);
        s.test.assign(perm.begin() + n_train, perm.end());
        std::sort(s.train.begin(), s.train.end());
        std::sort(s.test.begin(), s.test.end());
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace bestpath

#include "bestpath/lasso.hpp"

#include <algorithm>
#include <cmath>

#include "bestpath/common.hpp"
#include "bestpath/crossval.hpp"
#include "bestpath/linmodel.hpp"

namespace bestpath {

namespace {

struct Standardized {
    Eigen::MatrixXd X;       // centered, unit ML sd (constant columns zeroed)
    Eigen::VectorXd y;       // centered
    Eigen::VectorXd mean;
    Eigen::VectorXd sd;
    double y_mean = 0.0;
};

Standardized standardize(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
    const int n = static_cast<int>(X.rows());
    const int p = static_cast<int>(X.cols());
    Standardized s;
    s.mean = X.colwise().mean();
    s.X = X.rowwise() - s.mean.transpose();
    s.sd.resize(p);
    for (int j = 0; j < p; ++j) {
        const double v = s.X.col(j).squaredNorm() / n;
        s.sd[j] = std::sqrt(v);
        if (s.sd[j] > 0.0) {
            s.X.col(j) /= s.sd[j];
        } else {
            s.X.col(j).setZero();  // constant column: excluded from the model
        }
    }
    s.y_mean = y.mean();
    s.y = y.array() - s.y_mean;
    return s;
}

double soft_threshold(double z, double g) {
    if (z > g) return z - g;
    if (z < -g) return z + g;
    return 0.0;
}

double objective(const Eigen::VectorXd& resid, const Eigen::VectorXd& beta,
                 double lambda, int n) {
    return resid.squaredNorm() / (2.0 * n) + lambda * beta.lpNorm<1>();
}

LassoFit destandardize(const Standardized& s, const Eigen::VectorXd& beta,
                       const std::vector<std::string>& names, double lambda,
                       bool converged, int sweeps) {
    const int p = static_cast<int>(beta.size());
    LassoFit fit;
    fit.lambda = lambda;
    fit.variables = names;
    fit.beta_std = beta;
    fit.col_mean = s.mean;
    fit.col_sd = s.sd;
    fit.converged = converged;
    fit.sweeps = sweeps;
    fit.coefficients.resize(p);
    double shift = 0.0;
    for (int j = 0; j < p; ++j) {
        fit.coefficients[j] = s.sd[j] > 0.0 ? beta[j] / s.sd[j] : 0.0;
        shift += fit.coefficients[j] * s.mean[j];
        if (beta[j] != 0.0) fit.active_set.push_back(names[j]);
    }
    fit.intercept = s.y_mean - shift;
    return fit;
}

}  // namespace

double lasso_lambda_max(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
    const Standardized s = standardize(X, y);
    const int n = static_cast<int>(X.rows());
    // Per-column dot products, matching the coordinate-descent update
    // bit-for-bit so that the solution at lambda_max is exactly zero.
    double lmax = 0.0;
    for (int j = 0; j < static_cast<int>(X.cols()); ++j) {
        lmax = std::max(lmax, std::fabs(s.X.col(j).dot(s.y) / n));
    }
    return lmax;
}

std::vector<LassoFit> lasso_path(const Eigen::MatrixXd& X,
                                 const Eigen::VectorXd& y,
                                 const std::vector<std::string>& names,
                                 const std::vector<double>& lambda_grid,
                                 double tol, int max_iter) {
    const int n = static_cast<int>(X.rows());
    const int p = static_cast<int>(X.cols());
    if (static_cast<int>(names.size()) != p) {
        throw DataError("lasso_path: names length does not match design width");
    }
    if (n < 2 || p < 1) {
        throw DataError("lasso_path: need at least 2 rows and 1 column");
    }
    for (std::size_t i = 0; i + 1 < lambda_grid.size(); ++i) {
        if (lambda_grid[i + 1] > lambda_grid[i]) {
            throw DataError("lasso_path: lambda grid must be non-increasing");
        }
    }
    if (!lambda_grid.empty() && lambda_grid.back() < 0.0) {
        throw DataError("lasso_path: lambdas must be non-negative");
    }

    const Standardized s = standardize(X, y);

    std::vector<LassoFit> fits;
    fits.reserve(lambda_grid.size());
    Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);      // warm start carrier
    Eigen::VectorXd resid = s.y;                          // y - X beta

    for (double lambda : lambda_grid) {
        bool converged = false;
        int sweeps = 0;
        double prev_obj = objective(resid, beta, lambda, n);
        while (sweeps < max_iter) {
            ++sweeps;
            double max_delta = 0.0;
            for (int j = 0; j < p; ++j) {
                if (s.sd[j] <= 0.0) continue;
                const double old = beta[j];
                // x_j'x_j/n == 1 after standardization.
                const double z = s.X.col(j).dot(resid) / n + old;
                const double next = soft_threshold(z, lambda);
                if (next != old) {
                    resid += s.X.col(j) * (old - next);
                    beta[j] = next;
                    max_delta = std::max(max_delta, std::fabs(next - old));
                }
            }
            const double obj = objective(resid, beta, lambda, n);
            if (obj > prev_obj + 1e-10 * (1.0 + std::fabs(prev_obj))) {
                throw NumericalError(
                    "lasso_path: objective increased across a sweep");
            }
            prev_obj = obj;
            if (max_delta < tol) {
                converged = true;
                break;
            }
        }
        fits.push_back(destandardize(s, beta, names, lambda, converged, sweeps));
    }
    return fits;
}

LassoCVResult lasso_cv(const Dataset& ds, const std::string& response,
                       const std::vector<std::string>& regressors, int folds,
                       std::uint64_t seed, int grid_size) {
    if (grid_size < 2) throw DataError("lasso_cv: grid_size must be >= 2");
    const int n = ds.n();
    if (folds < 2) throw DataError("lasso_cv: need at least 2 folds");
    if (n < 2 * folds) {
        throw DataError("lasso_cv: need n >= 2*folds");
    }

    const Design full = design_matrix(ds, response, regressors);
    const int p = static_cast<int>(full.X.cols()) - 1;
    if (p < 1) throw DataError("lasso_cv: no regressor columns");
    const Eigen::MatrixXd X = full.X.rightCols(p);
    const Eigen::VectorXd y = full.y;
    const std::vector<std::string> names(full.col_names.begin() + 1,
                                         full.col_names.end());

    const double lmax = lasso_lambda_max(X, y);
    if (lmax <= 0.0) {
        throw NumericalError("lasso_cv: all regressors uncorrelated with the "
                             "response (lambda_max = 0)");
    }
    LassoCVResult result;
    result.lambda_grid.resize(grid_size);
    for (int i = 0; i < grid_size; ++i) {
        // Log-spaced from lambda_max down to lambda_max*1e-4.
        result.lambda_grid[i] =
            lmax * std::pow(1e-4, static_cast<double>(i) / (grid_size - 1));
    }

    SplitMix64 rng(seed);
    const std::vector<std::vector<int>> fold_rows = make_folds(n, folds, rng);

    result.cv_sse.assign(grid_size, 0.0);
    for (int f = 0; f < folds; ++f) {
        const std::vector<int>& val = fold_rows[f];
        std::vector<char> in_val(n, 0);
        for (int r : val) in_val[r] = 1;
        const int n_train = n - static_cast<int>(val.size());
        Eigen::MatrixXd Xtr(n_train, p);
        Eigen::VectorXd ytr(n_train);
        int t = 0;
        for (int r = 0; r < n; ++r) {
            if (!in_val[r]) {
                Xtr.row(t) = X.row(r);
                ytr[t] = y[r];
                ++t;
            }
        }
        const std::vector<LassoFit> path =
            lasso_path(Xtr, ytr, names, result.lambda_grid);
        for (int i = 0; i < grid_size; ++i) {
            const LassoFit& fit = path[i];
            for (int r : val) {
                const double yhat = fit.intercept + X.row(r).dot(fit.coefficients);
                result.cv_sse[i] += (y[r] - yhat) * (y[r] - yhat);
            }
        }
    }

    result.best_index = 0;
    for (int i = 1; i < grid_size; ++i) {
        if (result.cv_sse[i] < result.cv_sse[result.best_index]) {
            result.best_index = i;  // strict: ties keep the larger lambda
        }
    }

    const std::vector<LassoFit> full_path =
        lasso_path(X, y, names, result.lambda_grid);
    result.best = full_path[result.best_index];
    return result;
}

}  // namespace bestpath

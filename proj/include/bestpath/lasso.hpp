#ifndef BESTPATH_LASSO_HPP
#define BESTPATH_LASSO_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "bestpath/dataset.hpp"
#include "bestpath/selector.hpp"

namespace bestpath {

// L1-penalized least squares,
//   (1/2n) * sum (y_i - b0 - x_i.b)^2 + lambda * sum |b_j|,
// solved by cyclic coordinate descent with soft-thresholding on internally
// standardized columns (mean 0, ML sd 1) and centered response.
struct LassoFit {
    double lambda = 0.0;
    std::vector<std::string> variables;   // design column names (no intercept)
    Eigen::VectorXd coefficients;         // original scale
    double intercept = 0.0;
    std::vector<std::string> active_set;  // nonzero coefficients
    Eigen::VectorXd col_mean;             // standardization used internally
    Eigen::VectorXd col_sd;               // ML sd; 0 marks a constant column
    Eigen::VectorXd beta_std;             // standardized-scale coefficients
    bool converged = true;
    int sweeps = 0;
};

// Coordinate descent along a non-increasing lambda grid with warm starts.
// Convergence per grid point: max coefficient change < tol, capped at
// max_iter sweeps (non-convergence flags the fit but still returns it). The
// objective is checked to be non-increasing across sweeps.
std::vector<LassoFit> lasso_path(const Eigen::MatrixXd& X,
                                 const Eigen::VectorXd& y,
                                 const std::vector<std::string>& names,
                                 const std::vector<double>& lambda_grid,
                                 double tol = 1e-7, int max_iter = 10000);

// Smallest lambda with an all-zero solution: max_j |x_j'y_c| / n on the
// standardized scale.
double lasso_lambda_max(const Eigen::MatrixXd& X, const Eigen::VectorXd& y);

struct LassoCVResult {
    LassoFit best;                 // refit on the full data at the chosen lambda
    std::vector<double> lambda_grid;
    std::vector<double> cv_sse;    // summed validation SSE per grid point
    int best_index = 0;
};

// k-fold CV over a log-spaced grid of grid_size lambdas in
// [lambda_max*1e-4, lambda_max]; the grid is computed on the full data, the
// per-fold paths standardize on their own training rows. Ties in CV error go
// to the larger (sparser) lambda.
LassoCVResult lasso_cv(const Dataset& ds, const std::string& response,
                       const std::vector<std::string>& regressors, int folds,
                       std::uint64_t seed, int grid_size = 100);

struct CompareConfig {
    int repeats = 100;
    double train_frac = 0.7;
    std::uint64_t seed = 42;
    int lasso_grid_size = 100;
    // Selector settings for the best-path arm (folds/alpha/penalty/...).
    SelectorConfig selector;
    // Literal protocol: run the best-path selection once on the full data
    // and only refit its coefficients per training split. Default (false)
    // re-runs the whole pipeline inside each split, which is leakage-free.
    bool paper_mode = false;
    int threads = 1;
};

struct CompareRow {
    int split = 0;  // 1-based
    double mse_bestpath = 0.0;
    double mse_lasso = 0.0;
    std::string winner;  // "bestpath" | "lasso" | "tie"
};

struct CompareResult {
    std::vector<CompareRow> rows;  // successful splits only
    int wins_bestpath = 0;
    int wins_lasso = 0;
    int ties = 0;
    int n_failed = 0;
    std::vector<std::string> failures;
    std::vector<std::string> bestpath_vars_full;  // paper mode: the fixed set
};

// Repeated 70/30 benchmark of the best-path pipeline against the LASSO
// baseline (all non-target variables offered). Test MSE is the plain mean
// squared prediction error. Failed splits are excluded from the counts.
CompareResult compare_predictions(const Dataset& ds, const std::string& target,
                                  const CompareConfig& config);

// CSV rendering: split,mse_bestpath,mse_lasso,winner.
std::string compare_csv(const CompareResult& result);

}  // namespace bestpath

#endif

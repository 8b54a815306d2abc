#ifndef BESTPATH_CROSSVAL_HPP
#define BESTPATH_CROSSVAL_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "bestpath/dataset.hpp"
#include "bestpath/rng.hpp"

namespace bestpath {

// Cross-validated fit quality for one regressor set.
//
// cv_r2_adjusted is the mean over folds of the squared correlation between
// out-of-fold predictions and observations (folds where the correlation is
// undefined are excluded). cv_mse is derived from it through the identity
// r2 = 1 - mse * c with c = (n-1)/TSS taken from the full sample, so the
// identity holds exactly on the aggregate. cv_rmse is the mean over folds of
// the out-of-fold root mean squared error and is reported for reference.
struct CVResult {
    int folds = 0;
    std::uint64_t seed = 0;
    double cv_mse = 0.0;
    double cv_r2_adjusted = 0.0;
    double cv_rmse = 0.0;
    bool failed = false;
    std::string failure_reason;
};

// Validation-fold index lists: a seeded shuffle dealt round-robin, so fold
// sizes differ by at most one and every row lands in exactly one fold.
std::vector<std::vector<int>> make_folds(int n, int folds, SplitMix64& rng);

// Deterministic k-fold CV of an OLS fit. Requires folds >= 2 and
// n >= 2*folds (every validation fold then has at least 2 rows, so the
// per-fold correlation is well defined). A fold whose training design is
// singular marks the result failed instead of throwing.
CVResult kfold_cv(const Dataset& ds, const std::string& response,
                  const std::vector<std::string>& regressors, int folds,
                  std::uint64_t seed);

struct Split {
    std::vector<int> train;
    std::vector<int> test;
};

// Seeded 70/30-style partitions; repeat r is generated from the substream
// rng.split(r), so splits are reproducible individually.
std::vector<Split> train_test_splits(int n, double train_frac, int repeats,
                                     std::uint64_t seed);

}  // namespace bestpath

#endif

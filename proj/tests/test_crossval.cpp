#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "bestpath/common.hpp"
#include "bestpath/crossval.hpp"
#include "bestpath/dataset.hpp"
#include "doctest.h"
#include "testutil.hpp"

using namespace bestpath;
using testutil::ccol;
using testutil::dcol;

namespace {

Dataset noisy_linear_dataset(int n, double noise_sd, std::uint64_t seed) {
    SplitMix64 rng(seed);
    std::vector<double> x1, x2, y;
    for (int i = 0; i < n; ++i) {
        const double a = testutil::normal(rng);
        const double b = testutil::normal(rng);
        x1.push_back(a);
        x2.push_back(b);
        y.push_back(2.0 * a - b + noise_sd * testutil::normal(rng));
    }
    return Dataset(std::vector<Column>{ccol("y", y), ccol("x1", x1), ccol("x2", x2)});
}

}  // namespace

TEST_CASE("make_folds partitions the rows") {
    SplitMix64 rng(42);
    const auto folds = make_folds(23, 5, rng);
    REQUIRE(folds.size() == 5);
    std::set<int> all;
    for (const auto& f : folds) {
        // Sizes differ by at most one: 23 = 4*5 + 3.
        CHECK((f.size() == 4 || f.size() == 5));
        CHECK(std::is_sorted(f.begin(), f.end()));
        for (int r : f) {
            CHECK(all.insert(r).second);  // no row in two folds
        }
    }
    CHECK(all.size() == 23);
    CHECK(*all.begin() == 0);
    CHECK(*all.rbegin() == 22);
}

TEST_CASE("make_folds supports the leave-one-out partition") {
    SplitMix64 rng(1);
    const auto folds = make_folds(6, 6, rng);
    REQUIRE(folds.size() == 6);
    for (const auto& f : folds) CHECK(f.size() == 1);
}

TEST_CASE("make_folds rejects bad fold counts") {
    SplitMix64 rng(1);
    CHECK_THROWS_AS(make_folds(5, 0, rng), DataError);
    CHECK_THROWS_AS(make_folds(5, 6, rng), DataError);
}

TEST_CASE("make_folds is seed-deterministic") {
    SplitMix64 a(7), b(7), c(8);
    const auto fa = make_folds(20, 4, a);
    const auto fb = make_folds(20, 4, b);
    const auto fc = make_folds(20, 4, c);
    CHECK(fa == fb);
    CHECK(fa != fc);
}

TEST_CASE("near-perfect linear data scores near-perfectly") {
    const Dataset ds = noisy_linear_dataset(60, 1e-8, 9);
    const CVResult res = kfold_cv(ds, "y", {"x1", "x2"}, 10, 42);
    CHECK_FALSE(res.failed);
    CHECK(res.cv_r2_adjusted == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(res.cv_mse == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(res.cv_rmse < 1e-6);
}

TEST_CASE("cv_mse and cv_r2 satisfy the full-sample identity") {
    const Dataset ds = noisy_linear_dataset(50, 1.0, 10);
    const CVResult res = kfold_cv(ds, "y", {"x1", "x2"}, 5, 42);
    CHECK_FALSE(res.failed);

    const Column& yc = ds.col(0);
    double ybar = 0.0;
    for (double v : yc.values) ybar += v;
    ybar /= ds.n();
    double tss = 0.0;
    for (double v : yc.values) tss += (v - ybar) * (v - ybar);
    const double c = (ds.n() - 1) / tss;
    CHECK(res.cv_r2_adjusted ==
          doctest::Approx(1.0 - res.cv_mse * c).epsilon(1e-12));
    CHECK(res.cv_r2_adjusted > 0.5);  // strong signal survives CV
    CHECK(res.cv_r2_adjusted < 1.0);  // noise keeps it below perfection
}

TEST_CASE("kfold_cv is deterministic for a fixed seed") {
    const Dataset ds = noisy_linear_dataset(40, 0.5, 11);
    const CVResult a = kfold_cv(ds, "y", {"x1", "x2"}, 5, 123);
    const CVResult b = kfold_cv(ds, "y", {"x1", "x2"}, 5, 123);
    CHECK(a.cv_mse == b.cv_mse);  // bit-identical
    CHECK(a.cv_r2_adjusted == b.cv_r2_adjusted);
    CHECK(a.cv_rmse == b.cv_rmse);

    const CVResult c = kfold_cv(ds, "y", {"x1", "x2"}, 5, 124);
    CHECK(a.cv_mse != c.cv_mse);  // seed actually matters
}

TEST_CASE("a singular training fold marks the result failed") {
    // x2 is the indicator of row 0; once row 0 falls in a validation fold,
    // the training design has a constant zero column.
    std::vector<double> x1, x2, y;
    SplitMix64 rng(12);
    for (int i = 0; i < 20; ++i) {
        x1.push_back(testutil::normal(rng));
        x2.push_back(i == 0 ? 1.0 : 0.0);
        y.push_back(x1.back() + testutil::normal(rng));
    }
    const Dataset ds(std::vector<Column>{ccol("y", y), ccol("x1", x1), ccol("x2", x2)});
    const CVResult res = kfold_cv(ds, "y", {"x1", "x2"}, 10, 42);
    CHECK(res.failed);
    CHECK(res.failure_reason.find("fold") != std::string::npos);
}

TEST_CASE("kfold_cv precondition violations throw") {
    const Dataset ds = noisy_linear_dataset(10, 1.0, 13);
    CHECK_THROWS_AS(kfold_cv(ds, "y", {"x1"}, 1, 42), DataError);
    CHECK_THROWS_AS(kfold_cv(ds, "y", {"x1"}, 6, 42), DataError);  // n < 2*folds
}

TEST_CASE("kfold_cv works with discrete regressors") {
    SplitMix64 rng(14);
    std::vector<std::string> g;
    std::vector<double> y;
    for (int i = 0; i < 60; ++i) {
        const int lvl = static_cast<int>(rng.next_below(3));
        g.push_back(std::string(1, static_cast<char>('a' + lvl)));
        y.push_back(2.0 * lvl + 0.3 * testutil::normal(rng));
    }
    const Dataset ds(std::vector<Column>{ccol("y", y), dcol("g", g)});
    const CVResult res = kfold_cv(ds, "y", {"g"}, 5, 42);
    CHECK_FALSE(res.failed);
    CHECK(res.cv_r2_adjusted > 0.8);
}

TEST_CASE("train/test splits partition and are reproducible") {
    const auto splits = train_test_splits(10, 0.7, 5, 42);
    REQUIRE(splits.size() == 5);
    for (const auto& s : splits) {
        CHECK(s.train.size() == 7);
        CHECK(s.test.size() == 3);
        std::set<int> all(s.train.begin(), s.train.end());
        for (int r : s.test) CHECK(all.insert(r).second);
        CHECK(all.size() == 10);
    }

    // Reproducible per repeat index.
    const auto again = train_test_splits(10, 0.7, 5, 42);
    for (int r = 0; r < 5; ++r) {
        CHECK(splits[r].train == again[r].train);
        CHECK(splits[r].test == again[r].test);
    }

    // Distinct repeats give distinct splits (overwhelmingly likely).
    bool any_different = false;
    for (int r = 1; r < 5; ++r) {
        if (splits[r].train != splits[0].train) any_different = true;
    }
    CHECK(any_different);
}

TEST_CASE("train/test split argument validation") {
    CHECK_THROWS_AS(train_test_splits(10, 0.0, 5, 42), DataError);
    CHECK_THROWS_AS(train_test_splits(10, 1.0, 5, 42), DataError);
    CHECK_THROWS_AS(train_test_splits(10, 0.7, 0, 42), DataError);
    CHECK_THROWS_AS(train_test_splits(3, 0.05, 2, 42), DataError);  // empty train side
}

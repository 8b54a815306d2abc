#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "bestpath/dataset.hpp"
#include "bestpath/linmodel.hpp"
#include "bestpath/rng.hpp"
#include "doctest.h"
#include "oracles.hpp"
#include "testutil.hpp"

using namespace bestpath;
using testutil::ccol;
using testutil::dcol;

namespace {

Eigen::MatrixXd random_design(int n, int o, SplitMix64& rng) {
    Eigen::MatrixXd X(n, o + 1);
    X.col(0).setOnes();
    for (int j = 1; j <= o; ++j) {
        for (int i = 0; i < n; ++i) X(i, j) = testutil::normal(rng);
    }
    return X;
}

std::vector<std::string> generic_names(int o) {
    std::vector<std::string> names{"(Intercept)"};
    for (int j = 1; j <= o; ++j) names.push_back("x" + std::to_string(j));
    return names;
}

}  // namespace

TEST_CASE("design matrix layout") {
    Dataset ds(std::vector<Column>{
        ccol("y", {1, 2, 3, 4, 5}),
        ccol("a", {2, 4, 6, 8, 10}),
        dcol("g", {"lo", "hi", "mid", "lo", "hi"}),
    });
    const Design d = design_matrix(ds, "y", {"a", "g"});
    CHECK(d.response == "y");
    REQUIRE(d.col_names.size() == 4);  // intercept + a + two dummies
    CHECK(d.col_names[0] == "(Intercept)");
    CHECK(d.col_names[1] == "a");
    CHECK(d.col_names[2] == "g=hi");   // reference level is "lo" (first seen)
    CHECK(d.col_names[3] == "g=mid");
    CHECK(d.X.rows() == 5);
    CHECK(d.X.cols() == 4);
    CHECK(d.X.col(0).sum() == doctest::Approx(5.0));
    // Dummy values for g: rows 1 and 4 are "hi", row 2 is "mid".
    CHECK(d.X(0, 2) == 0.0);
    CHECK(d.X(1, 2) == 1.0);
    CHECK(d.X(2, 3) == 1.0);
    CHECK(d.X(4, 2) == 1.0);
    // Source-variable mapping groups the dummies.
    CHECK(d.source_var == std::vector<int>{-1, 0, 1, 1});
    CHECK(d.y(3) == doctest::Approx(4.0));
}

TEST_CASE("design matrix errors") {
    Dataset ds(std::vector<Column>{
        ccol("y", {1, 2, 3}),
        dcol("g", {"a", "b", "a"}),
    });
    CHECK_THROWS_AS(design_matrix(ds, "g", {"y"}), DataError);   // discrete response
    CHECK_THROWS_AS(design_matrix(ds, "y", {"y"}), DataError);   // response as regressor
    CHECK_THROWS_AS(design_matrix(ds, "y", {"zz"}), DataError);  // unknown column
}

TEST_CASE("exact linear data is recovered exactly") {
    SplitMix64 rng(11);
    const int n = 20;
    Eigen::MatrixXd X = random_design(n, 2, rng);
    Eigen::VectorXd y = 3.0 * X.col(0) + 2.0 * X.col(1) - 1.0 * X.col(2);
    const ModelFit fit = ols_fit(X, y, generic_names(2));
    CHECK(fit.coefficients[0] == doctest::Approx(3.0).epsilon(1e-10));
    CHECK(fit.coefficients[1] == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(fit.coefficients[2] == doctest::Approx(-1.0).epsilon(1e-10));
    CHECK(fit.rss == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(fit.mse == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(fit.r2_adjusted == doctest::Approx(1.0).epsilon(1e-12));
    // Exact fit: the residual is numerically (not bit-exactly) zero, so the
    // t statistic is astronomically large and p vanishes.
    CHECK(fit.p_values[1] < 1e-12);
}

TEST_CASE("intercept-only model has adjusted R2 exactly zero") {
    Eigen::MatrixXd X(6, 1);
    X.setOnes();
    Eigen::VectorXd y(6);
    y << 1, 4, 2, 8, 5, 7;
    const ModelFit fit = ols_fit(X, y, {"(Intercept)"});
    CHECK(fit.o == 0);
    CHECK(fit.coefficients[0] == doctest::Approx(y.mean()));
    CHECK(fit.r2_adjusted == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("matches the SVD reference implementation") {
    SplitMix64 rng(22);
    for (int rep = 0; rep < 20; ++rep) {
        const int n = 25 + static_cast<int>(rng.next_below(30));
        const int o = 1 + static_cast<int>(rng.next_below(5));
        const Eigen::MatrixXd X = random_design(n, o, rng);
        Eigen::VectorXd y(n);
        for (int i = 0; i < n; ++i) {
            y(i) = 1.0 + X.row(i).tail(o).sum() + 0.5 * testutil::normal(rng);
        }
        const ModelFit fit = ols_fit(X, y, generic_names(o));
        const auto oracle = oracles::ols_svd(X, y);
        for (int j = 0; j <= o; ++j) {
            CHECK(fit.coefficients[j] ==
                  doctest::Approx(oracle.beta(j)).epsilon(1e-8));
            CHECK(fit.std_errors[j] == doctest::Approx(oracle.se(j)).epsilon(1e-8));
        }
        CHECK(fit.rss == doctest::Approx(oracle.rss).epsilon(1e-8));
        CHECK(fit.tss == doctest::Approx(oracle.tss).epsilon(1e-8));
        CHECK(fit.mse == doctest::Approx(oracle.sigma2).epsilon(1e-8));
    }
}

TEST_CASE("adjusted R2 identity holds exactly") {
    SplitMix64 rng(33);
    for (int rep = 0; rep < 10; ++rep) {
        const int n = 30;
        const int o = 3;
        const Eigen::MatrixXd X = random_design(n, o, rng);
        Eigen::VectorXd y(n);
        for (int i = 0; i < n; ++i) y(i) = X(i, 1) + testutil::normal(rng);
        const ModelFit fit = ols_fit(X, y, generic_names(o));
        CHECK(fit.r2_adjusted ==
              doctest::Approx(1.0 - fit.mse * ((n - 1) / fit.tss)).epsilon(1e-12));
    }
}

TEST_CASE("residuals are orthogonal to the design") {
    SplitMix64 rng(44);
    const int n = 40, o = 4;
    const Eigen::MatrixXd X = random_design(n, o, rng);
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) y(i) = X(i, 2) - X(i, 4) + testutil::normal(rng);
    const ModelFit fit = ols_fit(X, y, generic_names(o));
    const Eigen::VectorXd resid = y - X * fit.beta();
    CHECK((X.transpose() * resid).cwiseAbs().maxCoeff() ==
          doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("RSS never increases when a regressor is added") {
    SplitMix64 rng(55);
    const int n = 35;
    const Eigen::MatrixXd X = random_design(n, 4, rng);
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) y(i) = X(i, 1) + testutil::normal(rng);
    double prev_rss = std::numeric_limits<double>::infinity();
    for (int o = 1; o <= 4; ++o) {
        const ModelFit fit =
            ols_fit(X.leftCols(o + 1), y, generic_names(o));
        CHECK(fit.rss <= prev_rss + 1e-9);
        prev_rss = fit.rss;
    }
}

TEST_CASE("rank-deficient design names the dependent columns") {
    Eigen::MatrixXd X(10, 3);
    X.col(0).setOnes();
    for (int i = 0; i < 10; ++i) X(i, 1) = i;
    X.col(2) = 2.0 * X.col(1);  // exact duplicate direction
    Eigen::VectorXd y(10);
    for (int i = 0; i < 10; ++i) y(i) = i * i;
    try {
        ols_fit(X, y, {"(Intercept)", "x1", "x2dup"});
        FAIL("expected NumericalError");
    } catch (const NumericalError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("singular") != std::string::npos);
        // One of the two collinear columns is reported.
        CHECK((msg.find("x1") != std::string::npos ||
               msg.find("x2dup") != std::string::npos));
    }
}

TEST_CASE("too few observations throws") {
    Eigen::MatrixXd X(3, 3);
    X.setRandom();
    X.col(0).setOnes();
    Eigen::VectorXd y(3);
    y << 1, 2, 3;
    CHECK_THROWS_AS(ols_fit(X, y, generic_names(2)), NumericalError);
}

TEST_CASE("zero-variance response throws") {
    SplitMix64 rng(66);
    const Eigen::MatrixXd X = random_design(10, 2, rng);
    Eigen::VectorXd y = Eigen::VectorXd::Constant(10, 4.2);
    CHECK_THROWS_AS(ols_fit(X, y, generic_names(2)), NumericalError);
}

TEST_CASE("predict multiplies through the coefficients") {
    SplitMix64 rng(77);
    const Eigen::MatrixXd X = random_design(20, 2, rng);
    Eigen::VectorXd y(20);
    for (int i = 0; i < 20; ++i) y(i) = X(i, 1) + testutil::normal(rng);
    const ModelFit fit = ols_fit(X, y, generic_names(2));
    const Eigen::VectorXd pred = predict(fit, X.topRows(5));
    for (int i = 0; i < 5; ++i) {
        CHECK(pred(i) == doctest::Approx(X.row(i) * fit.beta()).epsilon(1e-12));
    }
    Eigen::MatrixXd wrong(5, 2);
    wrong.setZero();
    CHECK_THROWS_AS(predict(fit, wrong), DataError);
}

TEST_CASE("significance codes") {
    CHECK(significance_code(0.0005) == "***");
    CHECK(significance_code(0.001) == "***");
    CHECK(significance_code(0.005) == "**");
    CHECK(significance_code(0.03) == "*");
    CHECK(significance_code(0.07) == ".");
    CHECK(significance_code(0.5) == "");
}

TEST_CASE("published six-variable fit on the reference dataset") {
    const Dataset ds = load_csv(testutil::data_path("Hitters.csv"));
    const std::vector<std::string> vars = {"CRuns",   "CWalks", "AtBat",
                                           "PutOuts", "Hits",   "Walks"};
    const ModelFit fit = ols_fit(design_matrix(ds, "Salary", vars));
    REQUIRE(fit.variables.size() == 7);

    // Published reference values for this model (coefficients rounded to two
    // decimals in the original report).
    const std::vector<std::pair<std::string, double>> expected = {
        {"(Intercept)", 41.83}, {"CRuns", 1.12},  {"CWalks", -0.70},
        {"AtBat", -2.13},       {"PutOuts", 0.30}, {"Hits", 7.31},
        {"Walks", 6.17},
    };
    for (const auto& [name, value] : expected) {
        bool found = false;
        for (std::size_t j = 0; j < fit.variables.size(); ++j) {
            if (fit.variables[j] == name) {
                found = true;
                CAPTURE(name);
                // Reference values are rounded to two decimals; allow 1%
                // relative or the rounding granularity, whichever is larger.
                const double tol = std::max(0.01 * std::fabs(value), 0.005);
                CHECK(std::fabs(fit.coefficients[j] - value) <= tol);
            }
        }
        CHECK(found);
    }
    CHECK(std::fabs(fit.r2_adjusted - 0.486) < 0.005);
    CHECK(fit.n_obs == 263);

    // Every regressor in this model is significant at the 5% level.
    for (std::size_t j = 1; j < fit.variables.size(); ++j) {
        CHECK(fit.p_values[j] < 0.05);
    }
}

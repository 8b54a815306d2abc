#ifndef BESTPATH_LINMODEL_HPP
#define BESTPATH_LINMODEL_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "bestpath/dataset.hpp"

namespace bestpath {

// Design matrix with a leading intercept column. Discrete regressors are
// dummy-coded against their first level; dummy columns are named
// "var=level".
struct Design {
    Eigen::MatrixXd X;
    Eigen::VectorXd y;
    std::vector<std::string> col_names;  // col_names[0] == "(Intercept)"
    std::string response;
    // col_names index -> position in the regressor list that produced it
    // (intercept -> -1); used to prune dummy groups jointly.
    std::vector<int> source_var;
};

Design design_matrix(const Dataset& ds, const std::string& response,
                     const std::vector<std::string>& regressors);

struct ModelFit {
    std::vector<std::string> variables;  // post-encoding, intercept first
    std::vector<double> coefficients;
    std::vector<double> std_errors;
    std::vector<double> t_values;
    std::vector<double> p_values;
    double r2_adjusted = 0.0;
    double mse = 0.0;  // RSS / (n - o - 1)
    int n_obs = 0;
    int o = 0;  // regressor columns, excluding intercept
    double rss = 0.0;
    double tss = 0.0;

    Eigen::VectorXd beta() const {
        return Eigen::Map<const Eigen::VectorXd>(coefficients.data(),
                                                 static_cast<long>(coefficients.size()));
    }
};

// OLS via column-pivoted QR. Requires n > o+1 and full column rank; a
// rank-deficient design raises NumericalError naming the dependent columns.
// Standard errors come from sigma^2 (X'X)^-1 with sigma^2 = RSS/(n-o-1),
// p-values from the exact t distribution with n-o-1 dof.
ModelFit ols_fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                 const std::vector<std::string>& col_names);

ModelFit ols_fit(const Design& d);

// X * beta for a design built with the same regressor list.
Eigen::VectorXd predict(const ModelFit& fit, const Eigen::MatrixXd& X);

// R-style significance code for a p-value: *** / ** / * / . / empty.
std::string significance_code(double p);

}  // namespace bestpath

#endif

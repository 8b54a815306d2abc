#include "bestpath/linmodel.hpp"

#include <cmath>
#include <limits>

#include "bestpath/common.hpp"
#include "bestpath/stats.hpp"

namespace bestpath {

Design design_matrix(const Dataset& ds, const std::string& response,
                     const std::vector<std::string>& regressors) {
    const int yi = ds.index_of(response);
    const Column& yc = ds.col(yi);
    if (yc.kind != VariableKind::Continuous) {
        throw DataError("response '" + response +
                        "' is discrete; the linear model needs a continuous response");
    }
    const int n = ds.n();

    Design d;
    d.response = response;
    d.y = Eigen::Map<const Eigen::VectorXd>(yc.values.data(), n);
    d.col_names.push_back("(Intercept)");
    d.source_var.push_back(-1);

    int width = 1;
    for (const std::string& name : regressors) {
        const Column& c = ds.col(ds.index_of(name));
        width += c.kind == VariableKind::Continuous
                     ? 1
                     : std::max(0, c.n_levels() - 1);
    }
    d.X.resize(n, width);
    d.X.col(0).setOnes();

    int col = 1;
    for (int v = 0; v < static_cast<int>(regressors.size()); ++v) {
        const std::string& name = regressors[v];
        if (name == response) {
            throw DataError("response '" + response + "' listed as regressor");
        }
        const Column& c = ds.col(ds.index_of(name));
        if (c.kind == VariableKind::Continuous) {
            d.X.col(col) = Eigen::Map<const Eigen::VectorXd>(c.values.data(), n);
            d.col_names.push_back(name);
            d.source_var.push_back(v);
            ++col;
        } else {
            // Level 0 (first appearance) is the reference.
            for (int lvl = 1; lvl < c.n_levels(); ++lvl) {
                for (int r = 0; r < n; ++r) {
                    d.X(r, col) = c.codes[r] == lvl ? 1.0 : 0.0;
                }
                d.col_names.push_back(name + "=" + c.levels[lvl]);
                d.source_var.push_back(v);
                ++col;
            }
        }
    }
    return d;
}

ModelFit ols_fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                 const std::vector<std::string>& col_names) {
    const int n = static_cast<int>(X.rows());
    const int cols = static_cast<int>(X.cols());
    const int o = cols - 1;
    if (static_cast<int>(col_names.size()) != cols) {
        throw DataError("ols_fit: column name count does not match design");
    }
    if (n <= o + 1) {
        throw NumericalError("ols_fit: need more observations than coefficients (n=" +
                             std::to_string(n) + ", coefficients=" +
                             std::to_string(cols) + ")");
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
    if (qr.rank() < cols) {
        const auto& perm = qr.colsPermutation().indices();
        std::string offenders;
        for (int k = static_cast<int>(qr.rank()); k < cols; ++k) {
            if (!offenders.empty()) offenders += ", ";
            offenders += col_names[perm[k]];
        }
        throw NumericalError("singular design matrix; dependent columns: " +
                             offenders);
    }

    ModelFit fit;
    fit.variables = col_names;
    fit.n_obs = n;
    fit.o = o;

    const Eigen::VectorXd beta = qr.solve(y);
    const Eigen::VectorXd resid = y - X * beta;
    fit.rss = resid.squaredNorm();
    const double ybar = y.mean();
    fit.tss = (y.array() - ybar).square().sum();
    if (fit.tss <= 0.0) {
        throw NumericalError("ols_fit: response has zero variance");
    }

    const double dof = n - o - 1;
    const double sigma2 = fit.rss / dof;
    fit.mse = sigma2;
    fit.r2_adjusted = 1.0 - fit.mse * ((n - 1) / fit.tss);

    // (X'X)^-1 = P (R'R)^-1 P' from the pivoted factorization X P = Q R.
    const Eigen::MatrixXd R =
        qr.matrixR().topLeftCorner(cols, cols).triangularView<Eigen::Upper>();
    const Eigen::MatrixXd Rinv =
        R.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(cols, cols));
    const Eigen::MatrixXd xtx_inv_perm = Rinv * Rinv.transpose();
    const Eigen::MatrixXd xtx_inv =
        qr.colsPermutation() * xtx_inv_perm * qr.colsPermutation().transpose();

    fit.coefficients.resize(cols);
    fit.std_errors.resize(cols);
    fit.t_values.resize(cols);
    fit.p_values.resize(cols);
    for (int j = 0; j < cols; ++j) {
        fit.coefficients[j] = beta[j];
        const double var_j = sigma2 * xtx_inv(j, j);
        fit.std_errors[j] = var_j > 0.0 ? std::sqrt(var_j) : 0.0;
        if (fit.std_errors[j] > 0.0) {
            fit.t_values[j] = beta[j] / fit.std_errors[j];
            fit.p_values[j] = student_t_two_sided_p(fit.t_values[j], dof);
        } else {
            // Exact fit: zero residual variance. Nonzero coefficients are
            // certain, zero ones vacuous.
            fit.t_values[j] = beta[j] == 0.0
                                  ? 0.0
                                  : std::numeric_limits<double>::infinity() *
                                        (beta[j] > 0 ? 1.0 : -1.0);
            fit.p_values[j] = beta[j] == 0.0 ? 1.0 : 0.0;
        }
    }
    return fit;
}

ModelFit ols_fit(const Design& d) { return ols_fit(d.X, d.y, d.col_names); }

Eigen::VectorXd predict(const ModelFit& fit, const Eigen::MatrixXd& X) {
    if (X.cols() != static_cast<long>(fit.coefficients.size())) {
        throw DataError("predict: design width does not match fitted coefficients");
    }
    return X * fit.beta();
}

std::string significance_code(double p) {
    if (p <= 0.001) return "***";
    if (p <= 0.01) return "**";
    if (p <= 0.05) return "*";
    if (p <= 0.1) return ".";
    return "";
}

}  // namespace bestpath

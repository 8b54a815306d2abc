#ifndef BESTPATH_STATS_HPP
#define BESTPATH_STATS_HPP

#include <vector>

namespace bestpath {

// Regularized incomplete beta function I_x(a, b), evaluated with the
// Lentz-style continued fraction; accurate to ~1e-13 for the argument
// ranges used here. a, b > 0 and 0 <= x <= 1 required.
double incomplete_beta(double a, double b, double x);

// Two-sided p-value for a t statistic with nu degrees of freedom:
// P(|T_nu| >= |t|) = I_{nu/(nu+t^2)}(nu/2, 1/2).
double student_t_two_sided_p(double t, double nu);

double mean(const std::vector<double>& v);

// Maximum-likelihood variance (divisor n).
double variance_ml(const std::vector<double>& v);

// Pearson correlation; returns 0 when either side has zero variance.
double pearson_correlation(const std::vector<double>& a,
                           const std::vector<double>& b);

}  // namespace bestpath

#endif

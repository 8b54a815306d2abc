#ifndef BESTPATH_MI_HPP
#define BESTPATH_MI_HPP

#include <vector>

#include "bestpath/common.hpp"
#include "bestpath/dataset.hpp"

namespace bestpath {

// Sample mutual information between two variables, scaled so that twice the
// value is the likelihood-ratio deviance of independence. dof is the
// difference in parameter count between the saturated and independence
// models; the penalized fields subtract the complexity penalty from the
// information.
struct MIEstimate {
    double i_value = 0.0;
    int dof = 0;
    double deviance = 0.0;
    double penalized_aic = 0.0;
    double penalized_bic = 0.0;
    bool degenerate = false;      // no usable dof (e.g. single observed level)
    bool infinite = false;        // perfect dependence sentinel (+inf)
    bool het_fallback = false;    // heterogeneous pre-check failed, used homogeneous

    double penalized(Penalty p) const {
        return p == Penalty::Aic ? penalized_aic : penalized_bic;
    }
};

// Two discrete variables: G-statistic contingency form,
// I = sum n_uv ln(N n_uv / (n_u n_v)), dof = (|U|-1)(|V|-1) over observed
// levels.
MIEstimate mi_discrete_discrete(const Column& u, const Column& v,
                                PenaltyStyle style = PenaltyStyle::Paper);

// Two continuous variables (bivariate Gaussian):
// I = -(N/2) ln(1 - rho^2), dof = 1. Perfect correlation yields the +inf
// sentinel.
MIEstimate mi_continuous_continuous(const Column& u, const Column& v,
                                    PenaltyStyle style = PenaltyStyle::Paper);

// Discrete u vs continuous v. Homogeneous: I = (N/2) ln(s0/s) with pooled
// within-level ML variance s, dof = |U|-1. Heterogeneous:
// I = (N/2) ln(s0) - (1/2) sum n_i ln(s_i), dof = 2(|U|-1); falls back to the
// homogeneous form (flagged) when any observed level has fewer than 2 rows
// or zero variance.
MIEstimate mi_mixed(const Column& u, const Column& v,
                    VarianceModel model = VarianceModel::Homogeneous,
                    PenaltyStyle style = PenaltyStyle::Paper);

// Kind-dispatched pairwise estimate.
MIEstimate mi_pair(const Column& a, const Column& b,
                   VarianceModel model = VarianceModel::Homogeneous,
                   PenaltyStyle style = PenaltyStyle::Paper);

// Symmetric p-by-p table of pairwise estimates (diagonal left default).
class MITable {
public:
    MITable() = default;
    MITable(int p) : p_(p), cells_(static_cast<std::size_t>(p) * p) {}

    int p() const { return p_; }
    const MIEstimate& at(int i, int j) const {
        return cells_.at(static_cast<std::size_t>(i) * p_ + j);
    }
    MIEstimate& at(int i, int j) {
        return cells_.at(static_cast<std::size_t>(i) * p_ + j);
    }

private:
    int p_ = 0;
    std::vector<MIEstimate> cells_;
};

MITable mi_matrix(const Dataset& ds,
                  VarianceModel model = VarianceModel::Homogeneous,
                  PenaltyStyle style = PenaltyStyle::Paper);

}  // namespace bestpath

#endif

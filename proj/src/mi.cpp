#include "bestpath/mi.hpp"

#include <cmath>
#include <limits>

#include "bestpath/stats.hpp"

namespace bestpath {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Sampling variances this close to zero are treated as exact dependence.
constexpr double kVarianceFloor = 1e-300;

void finalize(MIEstimate* e, int n, PenaltyStyle style) {
    // Each estimator is a log likelihood ratio, non-negative in exact
    // arithmetic; small negatives are rounding noise and are clamped.
    if (!e->infinite && e->i_value < 0.0) {
        e->i_value = 0.0;
    }
    e->deviance = e->infinite ? kInf : 2.0 * e->i_value;
    const double ln_n = std::log(static_cast<double>(n));
    const double k = static_cast<double>(e->dof);
    if (style == PenaltyStyle::Paper) {
        e->penalized_aic = e->i_value - 2.0 * k;
        e->penalized_bic = e->i_value - ln_n * k;
    } else {
        e->penalized_aic = e->i_value - k;
        e->penalized_bic = e->i_value - 0.5 * ln_n * k;
    }
}

// Number of levels actually present plus per-level counts.
std::vector<int> level_counts(const Column& c) {
    std::vector<int> counts(static_cast<std::size_t>(c.n_levels()), 0);
    for (int code : c.codes) ++counts[static_cast<std::size_t>(code)];
    return counts;
}

int observed_levels(const std::vector<int>& counts) {
    int k = 0;
    for (int c : counts) {
        if (c > 0) ++k;
    }
    return k;
}

}  // namespace

MIEstimate mi_discrete_discrete(const Column& u, const Column& v,
                                PenaltyStyle style) {
    const int n = static_cast<int>(u.codes.size());
    const int lu = u.n_levels();
    const int lv = v.n_levels();
    std::vector<int> joint(static_cast<std::size_t>(lu) * lv, 0);
    for (int r = 0; r < n; ++r) {
        ++joint[static_cast<std::size_t>(u.codes[r]) * lv + v.codes[r]];
    }
    const std::vector<int> nu = level_counts(u);
    const std::vector<int> nv = level_counts(v);

    MIEstimate e;
    e.dof = (observed_levels(nu) - 1) * (observed_levels(nv) - 1);
    if (e.dof <= 0) {
        e.dof = 0;
        e.degenerate = true;
        finalize(&e, n, style);
        return e;
    }
    double i = 0.0;
    for (int a = 0; a < lu; ++a) {
        for (int b = 0; b < lv; ++b) {
            const int c = joint[static_cast<std::size_t>(a) * lv + b];
            if (c == 0) continue;
            i += c * std::log(static_cast<double>(n) * c /
                              (static_cast<double>(nu[a]) * nv[b]));
        }
    }
    e.i_value = i;
    finalize(&e, n, style);
    return e;
}

MIEstimate mi_continuous_continuous(const Column& u, const Column& v,
                                    PenaltyStyle style) {
    const int n = static_cast<int>(u.values.size());
    const double rho = pearson_correlation(u.values, v.values);
    MIEstimate e;
    e.dof = 1;
    const double one_minus_r2 = 1.0 - rho * rho;
    if (one_minus_r2 <= 1e-15) {
        e.infinite = true;
        e.i_value = kInf;
    } else {
        e.i_value = -0.5 * n * std::log(one_minus_r2);
    }
    finalize(&e, n, style);
    return e;
}

MIEstimate mi_mixed(const Column& u, const Column& v, VarianceModel model,
                    PenaltyStyle style) {
    const int n = static_cast<int>(v.values.size());
    const int lu = u.n_levels();
    const std::vector<int> counts = level_counts(u);
    const int l_obs = observed_levels(counts);

    MIEstimate e;
    if (l_obs <= 1) {
        e.dof = 0;
        e.degenerate = true;
        finalize(&e, n, style);
        return e;
    }

    // Marginal and per-level ML variances of the continuous variable.
    const double s0 = variance_ml(v.values);
    std::vector<double> means(static_cast<std::size_t>(lu), 0.0);
    for (int r = 0; r < n; ++r) {
        means[static_cast<std::size_t>(u.codes[r])] += v.values[r];
    }
    for (int a = 0; a < lu; ++a) {
        if (counts[a] > 0) means[static_cast<std::size_t>(a)] /= counts[a];
    }
    std::vector<double> vars(static_cast<std::size_t>(lu), 0.0);
    for (int r = 0; r < n; ++r) {
        const double d = v.values[r] - means[static_cast<std::size_t>(u.codes[r])];
        vars[static_cast<std::size_t>(u.codes[r])] += d * d;
    }
    for (int a = 0; a < lu; ++a) {
        if (counts[a] > 0) vars[static_cast<std::size_t>(a)] /= counts[a];
    }

    if (s0 <= kVarianceFloor) {
        // No marginal variance to explain; nothing to gain from the split.
        e.dof = model == VarianceModel::Heterogeneous ? 2 * (l_obs - 1) : l_obs - 1;
        e.degenerate = true;
        finalize(&e, n, style);
        return e;
    }

    bool het_ok = model == VarianceModel::Heterogeneous;
    if (het_ok) {
        for (int a = 0; a < lu; ++a) {
            if (counts[a] == 0) continue;
            if (counts[a] < 2 || vars[static_cast<std::size_t>(a)] <= kVarianceFloor) {
                het_ok = false;
                break;
            }
        }
    }

    if (het_ok) {
        double sum = 0.0;
        for (int a = 0; a < lu; ++a) {
            if (counts[a] == 0) continue;
            sum += counts[a] * std::log(vars[static_cast<std::size_t>(a)]);
        }
        e.i_value = 0.5 * n * std::log(s0) - 0.5 * sum;
        e.dof = 2 * (l_obs - 1);
        finalize(&e, n, style);
        return e;
    }

    if (model == VarianceModel::Heterogeneous) e.het_fallback = true;

    double pooled = 0.0;
    for (int a = 0; a < lu; ++a) {
        pooled += counts[a] * vars[static_cast<std::size_t>(a)];
    }
    pooled /= n;
    e.dof = l_obs - 1;
    if (pooled <= kVarianceFloor) {
        e.infinite = true;
        e.i_value = kInf;
    } else {
        e.i_value = 0.5 * n * std::log(s0 / pooled);
    }
    finalize(&e, n, style);
    return e;
}

MIEstimate mi_pair(const Column& a, const Column& b, VarianceModel model,
                   PenaltyStyle style) {
    const bool ad = a.kind == VariableKind::Discrete;
    const bool bd = b.kind == VariableKind::Discrete;
    if (ad && bd) return mi_discrete_discrete(a, b, style);
    if (!ad && !bd) return mi_continuous_continuous(a, b, style);
    return ad ? mi_mixed(a, b, model, style) : mi_mixed(b, a, model, style);
}

MITable mi_matrix(const Dataset& ds, VarianceModel model, PenaltyStyle style) {
    const int p = ds.p();
    MITable table(p);
    for (int i = 0; i < p; ++i) {
        for (int j = i + 1; j < p; ++j) {
            const MIEstimate e = mi_pair(ds.col(i), ds.col(j), model, style);
            table.at(i, j) = e;
            table.at(j, i) = e;
        }
    }
    return table;
}

}  // namespace bestpath

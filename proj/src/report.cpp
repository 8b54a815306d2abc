#include "bestpath/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace bestpath {

namespace {

using ordered_json = nlohmann::ordered_json;

// JSON has no infinity literal; report non-finite values as null.
ordered_json json_num(double v) {
    if (std::isfinite(v)) return v;
    return nullptr;
}

ordered_json model_fit_json(const ModelFit& fit) {
    ordered_json j;
    j["n_obs"] = fit.n_obs;
    j["o"] = fit.o;
    j["r2_adjusted"] = json_num(fit.r2_adjusted);
    j["mse"] = json_num(fit.mse);
    j["coefficients"] = ordered_json::array();
    for (std::size_t i = 0; i < fit.variables.size(); ++i) {
        j["coefficients"].push_back({{"name", fit.variables[i]},
                                     {"estimate", json_num(fit.coefficients[i])},
                                     {"std_error", json_num(fit.std_errors[i])},
                                     {"t_value", json_num(fit.t_values[i])},
                                     {"p_value", json_num(fit.p_values[i])},
                                     {"signif", significance_code(fit.p_values[i])}});
    }
    return j;
}

ordered_json forest_json_obj(const Forest& f, const std::vector<std::string>& names) {
    ordered_json j;
    j["nodes"] = ordered_json::array();
    for (int i = 0; i < f.n_nodes; ++i) {
        j["nodes"].push_back({{"name", names[i]},
                              {"kind", to_string(f.node_kinds[i])}});
    }
    j["edges"] = ordered_json::array();
    for (const ForestEdge& e : f.edges) {
        ordered_json je;
        je["u"] = names[e.u];
        je["v"] = names[e.v];
        if (e.infinite) {
            je["i"] = nullptr;
            je["penalized"] = nullptr;
            je["infinite"] = true;
        } else {
            je["i"] = e.raw_i;
            je["penalized"] = e.weight;
        }
        j["edges"].push_back(je);
    }
    return j;
}

}  // namespace

std::string selection_report_json(const SelectionReport& rep,
                                  const SelectorConfig& config,
                                  const std::string& input_path,
                                  const std::string& input_hash,
                                  const std::vector<std::string>& load_warnings) {
    ordered_json j;
    j["schema_version"] = kReportSchemaVersion;
    j["tool"] = kToolName;
    j["version"] = kToolVersion;
    j["input"] = input_path;
    j["input_hash"] = input_hash;
    j["target"] = rep.target;
    j["config"] = {{"penalty", to_string(config.penalty)},
                   {"penalty_style", to_string(config.penalty_style)},
                   {"variance_model", to_string(config.variance_model)},
                   {"folds", config.folds},
                   {"seed", config.seed},
                   {"alpha", config.alpha},
                   {"prune_mode", to_string(config.prune_mode)},
                   {"plateau_tol", config.plateau_tol}};
    j["status"] = rep.status == SelectionStatus::Ok ? "ok" : "no_candidates";

    j["warnings"] = ordered_json::array();
    for (const std::string& w : load_warnings) j["warnings"].push_back(w);
    for (const std::string& w : rep.warnings) j["warnings"].push_back(w);

    j["forest"] = forest_json_obj(rep.forest, rep.node_names);

    j["path_steps"] = ordered_json::array();
    for (std::size_t s = 0; s < rep.steps.steps.size(); ++s) {
        ordered_json step;
        step["k"] = static_cast<int>(s) + 1;
        step["vars"] = ordered_json::array();
        for (int v : rep.steps.steps[s]) step["vars"].push_back(rep.node_names[v]);
        step["mi_sum"] = json_num(s < rep.step_scores.size()
                                      ? rep.step_scores[s].mi_sum
                                      : 0.0);
        j["path_steps"].push_back(step);
    }

    j["step_scores"] = ordered_json::array();
    for (const StepScore& sc : rep.step_scores) {
        ordered_json row;
        row["k"] = sc.k;
        row["vars"] = sc.vars;
        row["mi_sum"] = json_num(sc.mi_sum);
        row["failed"] = sc.failed;
        if (sc.failed) {
            row["failure_reason"] = sc.failure_reason;
        } else {
            row["cv_mse"] = json_num(sc.cv_mse);
            row["cv_rmse"] = json_num(sc.cv_rmse);
            row["cv_r2_adjusted"] = json_num(sc.cv_r2_adjusted);
            row["r2_adjusted"] = json_num(sc.r2_adjusted_full);
        }
        j["step_scores"].push_back(row);
    }

    if (rep.status == SelectionStatus::Ok) {
        j["best_step"] = rep.best_step;
        j["mi_plateau_k"] = rep.mi_plateau_k;
        j["model_w"] = model_fit_json(rep.mw);
        j["model_w"]["variables"] = rep.mw_vars;
        j["model_f"] = model_fit_json(rep.mf);
        j["model_f"]["variables"] = rep.mf_vars;
    } else {
        j["best_step"] = nullptr;
        j["mi_plateau_k"] = nullptr;
        j["model_w"] = nullptr;
        j["model_f"] = nullptr;
    }
    return j.dump(2) + "\n";
}

std::string model_fit_text(const ModelFit& fit, const std::string& title) {
    std::ostringstream out;
    out << title << "\n";
    char line[200];
    std::snprintf(line, sizeof(line), "  %-22s %12s %12s %9s %10s\n",
                  "Coefficients", "Estimate", "Std. Error", "t value",
                  "Pr(>|t|)");
    out << line;
    for (std::size_t i = 0; i < fit.variables.size(); ++i) {
        std::snprintf(line, sizeof(line), "  %-22s %12.4f %12.4f %9.3f %10.4g %s\n",
                      fit.variables[i].c_str(), fit.coefficients[i],
                      fit.std_errors[i], fit.t_values[i], fit.p_values[i],
                      significance_code(fit.p_values[i]).c_str());
        out << line;
    }
    std::snprintf(line, sizeof(line),
                  "  n = %d, adjusted R^2 = %.4f, MSE = %.4f\n", fit.n_obs,
                  fit.r2_adjusted, fit.mse);
    out << line;
    out << "  Signif. codes: 0 '***' 0.001 '**' 0.01 '*' 0.05 '.' 0.1 ' ' 1\n";
    return out.str();
}

std::string mi_table_csv(const MITable& table, const Dataset& ds,
                         Penalty penalty) {
    std::ostringstream out;
    out << "u,v,kind_pair,i,dof,penalized\n";
    for (int i = 0; i < ds.p(); ++i) {
        for (int j = i + 1; j < ds.p(); ++j) {
            const MIEstimate& e = table.at(i, j);
            const std::string kind_pair = to_string(ds.col(i).kind) + "-" +
                                          to_string(ds.col(j).kind);
            char buf[128];
            if (e.infinite) {
                std::snprintf(buf, sizeof(buf), "inf,%d,inf", e.dof);
            } else {
                std::snprintf(buf, sizeof(buf), "%.17g,%d,%.17g", e.i_value,
                              e.dof, e.penalized(penalty));
            }
            out << ds.col(i).name << "," << ds.col(j).name << "," << kind_pair
                << "," << buf << "\n";
        }
    }
    return out.str();
}

std::string manifest_json(const std::string& command,
                          const std::vector<std::pair<std::string, std::string>>& config_kv,
                          const std::string& input_path,
                          const std::string& input_hash,
                          const std::vector<std::string>& outputs) {
    ordered_json j;
    j["schema_version"] = kReportSchemaVersion;
    j["tool"] = kToolName;
    j["version"] = kToolVersion;
    j["command"] = command;
    j["input"] = input_path;
    j["input_hash"] = input_hash;
    j["config"] = ordered_json::object();
    for (const auto& [k, v] : config_kv) j["config"][k] = v;
    j["outputs"] = outputs;
    return j.dump(2) + "\n";
}

}  // namespace bestpath

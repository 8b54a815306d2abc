// bestpath: variable selection around a target by penalized
// mutual-information forests, nested path steps, cross-validated OLS and
// significance pruning, plus a LASSO prediction benchmark.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bestpath/common.hpp"
#include "bestpath/dataset.hpp"
#include "bestpath/forest.hpp"
#include "bestpath/io.hpp"
#include "bestpath/lasso.hpp"
#include "bestpath/mi.hpp"
#include "bestpath/report.hpp"
#include "bestpath/selector.hpp"

namespace {

using namespace bestpath;

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitNumerical = 3;

struct CommonOpts {
    std::string input;
    std::string schema;
    double missing_col_frac = 0.5;
    int max_levels = 10;
    std::string penalty = "bic";
    std::string penalty_style = "paper";
    std::string variance_model = "homogeneous";
    std::string manifest = "manifest.json";
    int threads = 1;
};

void add_common_options(CLI::App* sub, CommonOpts* opts) {
    sub->add_option("--input", opts->input, "Input CSV file")
        ->required();
    sub->add_option("--schema", opts->schema,
                    "Optional schema CSV (name,kind) overriding type inference");
    sub->add_option("--missing-col-frac", opts->missing_col_frac,
                    "Drop columns whose missing fraction exceeds this")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    sub->add_option("--max-levels", opts->max_levels,
                    "Integer columns with at most this many distinct values "
                    "are inferred discrete")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--penalty", opts->penalty, "Information criterion penalty")
        ->check(CLI::IsMember({"aic", "bic"}))
        ->capture_default_str();
    sub->add_option("--penalty-style", opts->penalty_style,
                    "Penalty constants: paper (2k / ln(n)k) or edwards "
                    "(k / ln(n)k/2)")
        ->check(CLI::IsMember({"paper", "edwards"}))
        ->capture_default_str();
    sub->add_option("--variance-model", opts->variance_model,
                    "Mixed-pair MI variance assumption")
        ->check(CLI::IsMember({"homogeneous", "heterogeneous"}))
        ->capture_default_str();
    sub->add_option("--manifest", opts->manifest, "Run manifest output path")
        ->capture_default_str();
    sub->add_option("--threads", opts->threads, "Worker thread cap")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
}

Dataset load_dataset(const CommonOpts& opts) {
    LoadOptions lo;
    lo.missing_col_frac = opts.missing_col_frac;
    lo.max_levels = opts.max_levels;
    if (!opts.schema.empty()) lo.schema = load_schema(opts.schema);
    Dataset ds = load_csv(opts.input, lo);
    for (const std::string& w : ds.warnings()) {
        std::cerr << "warning: " << w << "\n";
    }
    return ds;
}

void write_manifest(const CommonOpts& opts, const std::string& command,
                    std::vector<std::pair<std::string, std::string>> config_kv,
                    const std::vector<std::string>& outputs) {
    if (opts.manifest.empty()) return;
    config_kv.insert(config_kv.begin(),
                     {{"penalty", opts.penalty},
                      {"penalty_style", opts.penalty_style},
                      {"variance_model", opts.variance_model},
                      {"missing_col_frac", std::to_string(opts.missing_col_frac)},
                      {"max_levels", std::to_string(opts.max_levels)},
                      {"schema", opts.schema},
                      {"threads", std::to_string(opts.threads)}});
    write_file_atomic(opts.manifest,
                      manifest_json(command, config_kv, opts.input,
                                    file_hash_hex(opts.input), outputs));
}

SelectorConfig selector_config(const CommonOpts& common, int folds,
                               std::uint64_t seed, double alpha,
                               const std::string& prune_mode,
                               double plateau_tol) {
    SelectorConfig cfg;
    cfg.penalty = parse_penalty(common.penalty);
    cfg.penalty_style = parse_penalty_style(common.penalty_style);
    cfg.variance_model = parse_variance_model(common.variance_model);
    cfg.folds = folds;
    cfg.seed = seed;
    cfg.alpha = alpha;
    cfg.prune_mode = parse_prune_mode(prune_mode);
    cfg.plateau_tol = plateau_tol;
    cfg.threads = common.threads;
    return cfg;
}

int run_mi(const CommonOpts& common, const std::string& out_path) {
    const Dataset ds = load_dataset(common);
    const MITable table = mi_matrix(ds, parse_variance_model(common.variance_model),
                                    parse_penalty_style(common.penalty_style));
    const std::string csv = mi_table_csv(table, ds, parse_penalty(common.penalty));
    std::vector<std::string> outputs;
    if (out_path.empty()) {
        std::cout << csv;
    } else {
        write_file_atomic(out_path, csv);
        outputs.push_back(out_path);
        std::cout << "wrote MI table (" << ds.p() * (ds.p() - 1) / 2
                  << " pairs) to " << out_path << "\n";
    }
    write_manifest(common, "mi", {{"out", out_path}}, outputs);
    return 0;
}

int run_forest(const CommonOpts& common, const std::string& dot_path,
               const std::string& json_path) {
    const Dataset ds = load_dataset(common);
    const MITable table = mi_matrix(ds, parse_variance_model(common.variance_model),
                                    parse_penalty_style(common.penalty_style));
    std::vector<VariableKind> kinds;
    for (const Column& c : ds.cols()) kinds.push_back(c.kind);
    const Forest forest = build_forest(table, kinds, parse_penalty(common.penalty));

    const auto comps = components(forest);
    std::cout << "forest: " << forest.n_nodes << " nodes, "
              << forest.edges.size() << " edges, " << comps.size()
              << " components\n";
    for (const auto& comp : comps) {
        if (comp.size() == 1) {
            std::cout << "  isolated: " << ds.col(comp[0]).name << "\n";
        }
    }

    std::vector<std::string> outputs;
    const std::string json = export_forest_json(forest, ds.names());
    if (json_path.empty()) {
        std::cout << json;
    } else {
        write_file_atomic(json_path, json);
        outputs.push_back(json_path);
    }
    if (!dot_path.empty()) {
        write_file_atomic(dot_path, export_dot(forest, ds.names()));
        outputs.push_back(dot_path);
    }
    write_manifest(common, "forest", {{"dot", dot_path}, {"json", json_path}},
                   outputs);
    return 0;
}

struct SelectOpts {
    std::string target;
    int folds = 10;
    std::uint64_t seed = 42;
    double alpha = 0.1;
    std::string prune_mode = "backward";
    double plateau_tol = 0.05;
    std::string json_path;
    std::string dot_path;
};

int run_select(const CommonOpts& common, const SelectOpts& opts) {
    const Dataset ds = load_dataset(common);
    const SelectorConfig cfg =
        selector_config(common, opts.folds, opts.seed, opts.alpha,
                        opts.prune_mode, opts.plateau_tol);
    const SelectionReport rep = select(ds, opts.target, cfg);

    const auto comps = components(rep.forest);
    std::cout << "forest: " << rep.forest.n_nodes << " nodes, "
              << rep.forest.edges.size() << " edges, " << comps.size()
              << " components\n";
    for (const std::string& w : rep.warnings) std::cerr << "warning: " << w << "\n";

    if (rep.status == SelectionStatus::Ok) {
        std::cout << "path steps (target " << rep.target << "):\n";
        char line[160];
        std::snprintf(line, sizeof(line), "  %4s %6s %10s %12s %12s %12s\n", "k",
                      "vars", "mi_sum", "cv_rmse", "cv_r2_adj", "r2_adj");
        std::cout << line;
        for (const StepScore& sc : rep.step_scores) {
            if (sc.failed) {
                std::snprintf(line, sizeof(line), "  %4d %6d %10s (failed)\n",
                              sc.k, static_cast<int>(sc.vars.size()), "-");
            } else {
                std::snprintf(line, sizeof(line),
                              "  %4d %6d %10.3f %12.3f %12.4f %12.4f\n", sc.k,
                              static_cast<int>(sc.vars.size()), sc.mi_sum,
                              sc.cv_rmse, sc.cv_r2_adjusted, sc.r2_adjusted_full);
            }
            std::cout << line;
        }
        std::cout << "best step: " << rep.best_step
                  << " (MI plateau diagnostic: k = " << rep.mi_plateau_k
                  << ")\n\n";
        std::cout << model_fit_text(rep.mw, "model " + std::to_string(
                                                 static_cast<int>(rep.mw_vars.size())) +
                                                 "-variable (best step, pre-pruning)");
        std::cout << "\n";
        char alpha_buf[32];
        std::snprintf(alpha_buf, sizeof(alpha_buf), "%g", opts.alpha);
        std::cout << model_fit_text(rep.mf, std::string("final model (alpha = ") +
                                                alpha_buf + ")");
    } else {
        std::cout << "no candidates: target '" << rep.target
                  << "' is isolated in the forest\n";
    }

    std::vector<std::string> outputs;
    if (!opts.json_path.empty()) {
        write_file_atomic(opts.json_path,
                          selection_report_json(rep, cfg, common.input,
                                                file_hash_hex(common.input),
                                                ds.warnings()));
        outputs.push_back(opts.json_path);
    }
    if (!opts.dot_path.empty()) {
        write_file_atomic(opts.dot_path,
                          export_dot(rep.forest, ds.names(),
                                     ds.index_of(opts.target)));
        outputs.push_back(opts.dot_path);
    }
    write_manifest(common, "select",
                   {{"target", opts.target},
                    {"folds", std::to_string(opts.folds)},
                    {"seed", std::to_string(opts.seed)},
                    {"alpha", std::to_string(opts.alpha)},
                    {"prune_mode", opts.prune_mode},
                    {"plateau_tol", std::to_string(opts.plateau_tol)},
                    {"json", opts.json_path},
                    {"dot", opts.dot_path}},
                   outputs);
    return 0;
}

struct CompareOpts {
    std::string target;
    int repeats = 100;
    double train_frac = 0.7;
    std::uint64_t seed = 42;
    int folds = 10;
    double alpha = 0.1;
    std::string prune_mode = "backward";
    int grid_size = 100;
    bool paper_mode = false;
    std::string out_path = "results.csv";
};

int run_compare(const CommonOpts& common, const CompareOpts& opts) {
    const Dataset ds = load_dataset(common);
    CompareConfig cfg;
    cfg.repeats = opts.repeats;
    cfg.train_frac = opts.train_frac;
    cfg.seed = opts.seed;
    cfg.lasso_grid_size = opts.grid_size;
    cfg.selector = selector_config(common, opts.folds, opts.seed, opts.alpha,
                                   opts.prune_mode, 0.05);
    cfg.paper_mode = opts.paper_mode;
    cfg.threads = common.threads;

    const CompareResult result = compare_predictions(ds, opts.target, cfg);
    for (const std::string& f : result.failures) std::cerr << "warning: " << f << "\n";

    write_file_atomic(opts.out_path, compare_csv(result));
    std::cout << "prediction comparison (" << opts.repeats << " splits, "
              << (opts.paper_mode ? "paper protocol: selection on full data"
                                  : "selection re-run per split")
              << "):\n";
    std::cout << "  best-path wins: " << result.wins_bestpath << "\n";
    std::cout << "  lasso wins:     " << result.wins_lasso << "\n";
    std::cout << "  ties:           " << result.ties << "\n";
    std::cout << "  failed splits:  " << result.n_failed << "\n";
    if (!result.bestpath_vars_full.empty()) {
        std::cout << "  best-path variables (full data):";
        for (const std::string& v : result.bestpath_vars_full) std::cout << " " << v;
        std::cout << "\n";
    }
    std::cout << "  per-split results: " << opts.out_path << "\n";

    write_manifest(common, "compare",
                   {{"target", opts.target},
                    {"repeats", std::to_string(opts.repeats)},
                    {"train_frac", std::to_string(opts.train_frac)},
                    {"seed", std::to_string(opts.seed)},
                    {"folds", std::to_string(opts.folds)},
                    {"alpha", std::to_string(opts.alpha)},
                    {"prune_mode", opts.prune_mode},
                    {"grid_size", std::to_string(opts.grid_size)},
                    {"paper_mode", opts.paper_mode ? "true" : "false"},
                    {"out", opts.out_path}},
                   {opts.out_path});
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Variable selection via penalized mutual-information forests "
                 "and cross-validated path-step regression"};
    app.require_subcommand(1);

    CommonOpts mi_common;
    std::string mi_out;
    CLI::App* mi_cmd = app.add_subcommand("mi", "Dump the pairwise MI table as CSV");
    add_common_options(mi_cmd, &mi_common);
    mi_cmd->add_option("--out", mi_out, "Output CSV path (stdout if omitted)");

    CommonOpts forest_common;
    std::string forest_dot, forest_json;
    CLI::App* forest_cmd =
        app.add_subcommand("forest", "Build the penalized-MI spanning forest");
    add_common_options(forest_cmd, &forest_common);
    forest_cmd->add_option("--dot", forest_dot, "Graphviz output path");
    forest_cmd->add_option("--json", forest_json,
                           "Forest JSON output path (stdout if omitted)");

    CommonOpts select_common;
    SelectOpts select_opts;
    CLI::App* select_cmd = app.add_subcommand(
        "select", "Run the full best-path selection pipeline for a target");
    add_common_options(select_cmd, &select_common);
    select_cmd->add_option("--target", select_opts.target, "Response variable")
        ->required();
    select_cmd->add_option("--folds", select_opts.folds, "CV folds")
        ->check(CLI::Range(2, 1000000))
        ->capture_default_str();
    select_cmd->add_option("--seed", select_opts.seed, "CV fold seed")
        ->capture_default_str();
    select_cmd->add_option("--alpha", select_opts.alpha,
                           "Significance threshold for pruning")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    select_cmd
        ->add_option("--prune-mode", select_opts.prune_mode,
                     "Pruning strategy")
        ->check(CLI::IsMember({"backward", "single_pass"}))
        ->capture_default_str();
    select_cmd
        ->add_option("--plateau-tol", select_opts.plateau_tol,
                     "Relative tolerance of the MI plateau diagnostic")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    select_cmd->add_option("--json", select_opts.json_path, "Report JSON path");
    select_cmd->add_option("--dot", select_opts.dot_path,
                           "Graphviz forest output path");

    CommonOpts compare_common;
    CompareOpts compare_opts;
    CLI::App* compare_cmd = app.add_subcommand(
        "compare", "Benchmark best-path predictions against a LASSO baseline");
    add_common_options(compare_cmd, &compare_common);
    compare_cmd->add_option("--target", compare_opts.target, "Response variable")
        ->required();
    compare_cmd->add_option("--repeats", compare_opts.repeats,
                            "Number of train/test splits")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    compare_cmd->add_option("--train-frac", compare_opts.train_frac,
                            "Training fraction per split")
        ->capture_default_str();
    compare_cmd->add_option("--seed", compare_opts.seed, "Split seed")
        ->capture_default_str();
    compare_cmd->add_option("--folds", compare_opts.folds, "Inner CV folds")
        ->check(CLI::Range(2, 1000000))
        ->capture_default_str();
    compare_cmd->add_option("--alpha", compare_opts.alpha,
                            "Pruning threshold of the best-path arm")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    compare_cmd
        ->add_option("--prune-mode", compare_opts.prune_mode, "Pruning strategy")
        ->check(CLI::IsMember({"backward", "single_pass"}))
        ->capture_default_str();
    compare_cmd->add_option("--grid-size", compare_opts.grid_size,
                            "LASSO lambda grid size")
        ->check(CLI::Range(2, 100000))
        ->capture_default_str();
    compare_cmd->add_flag("--paper-mode", compare_opts.paper_mode,
                          "Select variables once on the full data instead of "
                          "re-running selection inside each split");
    compare_cmd->add_option("--out", compare_opts.out_path,
                            "Per-split results CSV")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);  // prints the message
        return kExitUsage;
    }

    try {
        if (mi_cmd->parsed()) return run_mi(mi_common, mi_out);
        if (forest_cmd->parsed()) return run_forest(forest_common, forest_dot, forest_json);
        if (select_cmd->parsed()) return run_select(select_common, select_opts);
        if (compare_cmd->parsed()) return run_compare(compare_common, compare_opts);
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitUsage;
}

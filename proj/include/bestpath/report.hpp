#ifndef BESTPATH_REPORT_HPP
#define BESTPATH_REPORT_HPP

#include <string>
#include <vector>

#include "bestpath/lasso.hpp"
#include "bestpath/linmodel.hpp"
#include "bestpath/mi.hpp"
#include "bestpath/selector.hpp"

namespace bestpath {

inline constexpr const char* kToolName = "bestpath";
inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr int kReportSchemaVersion = 1;

// Full JSON document for the `select` subcommand: config echo, forest,
// path steps, the per-step score table and both coefficient tables. Key
// order is fixed, so identical inputs yield byte-identical reports.
std::string selection_report_json(const SelectionReport& rep,
                                  const SelectorConfig& config,
                                  const std::string& input_path,
                                  const std::string& input_hash,
                                  const std::vector<std::string>& load_warnings);

// Pretty coefficient table for terminal output.
std::string model_fit_text(const ModelFit& fit, const std::string& title);

// MI table dump: u,v,kind_pair,i,dof,penalized.
std::string mi_table_csv(const MITable& table, const Dataset& ds,
                         Penalty penalty);

// Reproducibility manifest: tool version, command, config echo, input hash,
// declared outputs.
std::string manifest_json(const std::string& command,
                          const std::vector<std::pair<std::string, std::string>>& config_kv,
                          const std::string& input_path,
                          const std::string& input_hash,
                          const std::vector<std::string>& outputs);

}  // namespace bestpath

#endif

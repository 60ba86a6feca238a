#pragma once

#include <nlohmann/json_fwd.hpp>
#include <optional>
#include <string>
#include <vector>

#include "ritzlag/problems.hpp"

namespace rlcli {

enum class OutputFormat { csv, markdown, json };

OutputFormat format_from_string(const std::string& name);
const char* to_string(OutputFormat f);

/// One experiment invocation as parsed from the command line or a preset.
/// The seed field is carried for config round-tripping only; every
/// computation in the library is deterministic.
struct RunConfig {
  ritzlag::ProblemId problem = ritzlag::ProblemId::P1;
  std::vector<int> n_values{9};
  std::vector<int> s_values{};
  ritzlag::BasisVariant basis = ritzlag::BasisVariant::plain;
  double nu = 0.3;
  ritzlag::QuadratureOverrides quad;
  OutputFormat format = OutputFormat::csv;
  std::string out_path;
  std::uint64_t seed = 0;

  bool operator==(const RunConfig&) const = default;
};

nlohmann::json to_json(const RunConfig& config);
RunConfig run_config_from_json(const nlohmann::json& j);

/// Named experiment presets mirroring the source tables row for row.
struct Preset {
  std::string name;
  std::string description;
  // "table" presets carry explicit (problem, n, s, basis) rows; the demo
  // presets are dispatched by name.
  std::vector<ritzlag::ProblemConfig> rows;
};

class ExperimentRegistry {
 public:
  static const std::vector<Preset>& presets();
  static const Preset* find(const std::string& name);
};

/// Exit codes: 0 success, 1 usage error, 2 degenerate configuration,
/// 3 solver failure, 4 I/O error.
int run_main(int argc, char** argv);

}  // namespace rlcli

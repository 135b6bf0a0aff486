#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kershaw/closures.hpp"
#include "kershaw/scenario.hpp"

namespace kershaw {

/// A validated run specification. Every field has an explicit default.
struct RunConfig {
  ScenarioName scenario = ScenarioName::PlaneSource;
  ClosureFamily model = ClosureFamily::Kershaw;
  std::size_t order = 1;
  std::size_t n_cells = 1000;
  double cfl = 0.5;
  /// 0 keeps the scenario's final time.
  double final_time = 0.0;
  std::string output_dir = ".";
  /// Empty means t_f/10 checkpoints.
  std::vector<double> output_times;
  std::optional<ClosureFamily> reference_model;
  std::size_t reference_order = 99;
  /// Orders run by `sweep`.
  std::vector<std::size_t> orders{1, 2, 3, 4};
  /// Samples per axis for `surface`.
  std::size_t surface_n = 200;

  ClosureKind model_kind() const { return {model, order}; }
  std::optional<ClosureKind> reference_kind() const;
  Scenario make_scenario() const;
  double effective_final_time() const;
  RunOptions run_options() const;

  /// "key=value" pairs for every field in a fixed order.
  std::string echo() const;
};

/// Parses key = value lines; '#' starts a comment. Unknown or repeated keys
/// and malformed lines throw ParseError, bad values ValidationError.
RunConfig parse_config(std::string_view text);
RunConfig parse_config_file(const std::string& path);

/// Registry names: "kershaw", "pn", "mn" and "plane_source", "source_beam".
std::string family_name(ClosureFamily family);
ClosureFamily parse_family(std::string_view name);
ScenarioName parse_scenario(std::string_view name);

}  // namespace kershaw

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "irbox/core_model.hpp"
#include "irbox/economy_model.hpp"
#include "irbox/fractal_dimension.hpp"
#include "irbox/fractal_gasket.hpp"
#include "irbox/irbox_geometry.hpp"
#include "irbox/risk_indices.hpp"

// Serializers behind the command-line tool. All output is text and a pure
// function of the arguments.
namespace irbox::report {

/// Shortest decimal string that parses back to the same double.
std::string number(double value);

std::string indices_csv(const Panel& panel);
std::string indices_json(const Panel& panel);

struct RenderSpec {
  double width = 800;
  double height = 800;
  bool points = false;
  bool unity_line = false;
  std::vector<double> tr_levels;
  std::vector<double> nr_levels;
  std::vector<double> aco_levels;
  std::vector<double> firi_levels;
  std::optional<int> gasket_depth;

  [[nodiscard]] bool has_layers() const;
};

/// Box, requested layers and region-coloured points. Throws
/// Error(EmptyLayerSet) when no layer is requested.
std::string irbox_svg(const Panel& panel, const RenderSpec& spec, const GasketLimits& limits);

std::string gasket_svg(const GasketState& state, double width = 800, double height = 800);
std::string gasket_stats_json(const GasketState& state);

std::string dimension_csv(const BoxCountFit& fit);
std::string dimension_json(const BoxCountFit& fit, const std::string& source, int depth,
                           CountTarget target, CellRule rule = CellRule::Interior);

struct ScenarioFirm {
  std::string id;
  double d = 0;
  double e = 0;
  double x = 0;
};

struct Scenario {
  EconomyParams params;
  std::vector<ScenarioFirm> firms;
};

/// Throws Error(SchemaViolation) for malformed JSON or missing/mistyped fields.
Scenario parse_scenario(const std::string& json_text);
std::string simulate_json(const Scenario& scenario);

std::string probability_json(const Panel& panel, ProbabilityMethod method);

}  // namespace irbox::report

#include "irbox/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "irbox/csv_ingest.hpp"
#include "irbox/reports.hpp"

namespace irbox::cli {

ExitCode exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::SchemaViolation:
    case ErrorCode::MalformedInput:
    case ErrorCode::EmptyLayerSet:
    case ErrorCode::InsufficientScales:
    case ErrorCode::ScaleFinerThanDepth:
    case ErrorCode::OutOfRange:
    case ErrorCode::InvalidParameters:
      return kInputError;
    case ErrorCode::DepthLimit:
      return kInternalLimit;
    default:
      return kValidationError;
  }
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp + " for writing");
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!f) throw std::runtime_error("write to " + tmp + " failed");
  }
  std::filesystem::rename(tmp, path);
}

namespace {

struct GlobalOptions {
  double tolerance = kDefaultIdentityTolerance;
  std::string format = "csv";
  int depth_cap = GasketLimits{}.depth_cap;
};

struct PanelOptions {
  std::string csv_path;
  std::string axis = "auto";
  bool distress = false;
};

class Emitter {
 public:
  explicit Emitter(std::ostream& out) : out_(out) {}
  void emit(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
      out_ << content;
    } else {
      write_file_atomic(path, content);
    }
  }

 private:
  std::ostream& out_;
};

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::SchemaViolation, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

PanelAxis infer_axis(const CsvTable& table) {
  const auto& recs = table.records;
  auto same_firm = std::all_of(recs.begin(), recs.end(),
                               [&](const auto& r) { return r.firm_id == recs.front().firm_id; });
  if (same_firm) return PanelAxis::TimeSeries;
  auto same_period = std::all_of(recs.begin(), recs.end(),
                                 [&](const auto& r) { return r.period == recs.front().period; });
  if (same_period) return PanelAxis::CrossSection;
  throw Error(ErrorCode::MixedFirms,
              "records span several firms and several periods; pick one with --axis");
}

// Reads, validates and assembles a panel. Row failures are listed with line
// numbers before the first one is thrown.
Panel load_panel(const PanelOptions& opts, const GlobalOptions& global, std::ostream& err) {
  std::ifstream in(opts.csv_path);
  if (!in) throw Error(ErrorCode::SchemaViolation, "cannot read " + opts.csv_path);
  CsvTable table = read_balance_sheet_csv(in);
  if (table.records.empty()) throw Error(ErrorCode::EmptyPanel, opts.csv_path + " has no rows");
  auto issues = validate_rows(table, global.tolerance, opts.distress);
  if (!issues.empty()) {
    for (const auto& issue : issues) {
      err << opts.csv_path << ":" << issue.line << ": " << to_string(issue.code) << ": "
          << issue.detail << "\n";
    }
    const auto& first = issues.front();
    throw Error(first.code, "line " + std::to_string(first.line) + ": " + first.detail);
  }
  PanelAxis axis = opts.axis == "time-series"     ? PanelAxis::TimeSeries
                   : opts.axis == "cross-section" ? PanelAxis::CrossSection
                                                  : infer_axis(table);
  return build_panel(std::move(table.records), axis, opts.distress, global.tolerance);
}

void add_panel_options(CLI::App* cmd, PanelOptions& opts) {
  cmd->add_option("csv", opts.csv_path, "Balance-sheet CSV (firm_id,period,debt,equity[,assets])")
      ->required();
  cmd->add_option("--axis", opts.axis, "Panel axis")
      ->check(CLI::IsMember({"auto", "time-series", "cross-section"}));
  cmd->add_flag("--distress", opts.distress, "Admit records with negative equity");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Insolvency risk indices, IRBOX geometry and gasket dimension tools", "irbox"};
  app.require_subcommand(1);
  app.fallthrough();
  GlobalOptions global;
  app.add_option("--tolerance", global.tolerance, "Relative tolerance for a = d + e")
      ->envname("IRBOX_TOLERANCE")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--format", global.format, "Tabular output format")
      ->envname("IRBOX_FORMAT")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--depth-cap", global.depth_cap, "Deepest gasket iteration allowed")
      ->envname("IRBOX_DEPTH_CAP")
      ->check(CLI::Range(0, 30));

  Emitter emitter(out);

  // indices
  PanelOptions indices_opts;
  std::string indices_out;
  auto* indices = app.add_subcommand("indices", "Per-record risk indices");
  add_panel_options(indices, indices_opts);
  indices->add_option("-o,--out", indices_out, "Output file (default stdout)");

  // irbox
  PanelOptions irbox_opts;
  report::RenderSpec spec;
  std::string irbox_out;
  int gasket_layer = -1;
  auto* irbox_cmd = app.add_subcommand("irbox", "Render the risk box as SVG");
  add_panel_options(irbox_cmd, irbox_opts);
  irbox_cmd->add_option("-o,--out", irbox_out, "SVG output file (default stdout)");
  irbox_cmd->add_option("--width", spec.width)->check(CLI::PositiveNumber);
  irbox_cmd->add_option("--height", spec.height)->check(CLI::PositiveNumber);
  irbox_cmd->add_flag("--points", spec.points, "Observations coloured by region");
  irbox_cmd->add_flag("--unity-line", spec.unity_line, "The d = e line");
  irbox_cmd->add_option("--tr", spec.tr_levels, "Total-risk isocline levels");
  irbox_cmd->add_option("--nr", spec.nr_levels, "Net-risk isocline levels");
  irbox_cmd->add_option("--aco", spec.aco_levels, "Asset-capital overlap isocline levels");
  irbox_cmd->add_option("--firi", spec.firi_levels, "FIRI ray levels in (0, 1]");
  irbox_cmd->add_option("--gasket", gasket_layer, "Gasket layer depth")->check(CLI::NonNegativeNumber);

  // gasket
  int gasket_depth = 0;
  std::string gasket_svg_path, gasket_stats_path, gasket_bin_path;
  auto* gasket = app.add_subcommand("gasket", "Build the gasket at a given depth");
  gasket->add_option("--depth", gasket_depth, "Iteration depth")->required()->check(CLI::NonNegativeNumber);
  gasket->add_option("--svg", gasket_svg_path, "SVG of the remaining triangles");
  gasket->add_option("--stats", gasket_stats_path, "Stats JSON (default stdout)");
  gasket->add_option("--triangles", gasket_bin_path, "Binary triangle list");

  // dimension
  int dim_depth = 10;
  std::vector<int> dim_window;
  bool dim_square = false;
  bool dim_closed = false;
  std::string dim_input, dim_csv, dim_json;
  auto* dimension = app.add_subcommand("dimension", "Box-counting dimension fit");
  dimension->add_option("--depth", dim_depth, "Gasket depth")->check(CLI::NonNegativeNumber);
  dimension->add_option("--window", dim_window, "Scale window: m_min m_max")->expected(2);
  dimension->add_flag("--square", dim_square, "Count the filled unit square instead");
  dimension->add_flag("--closed-cells", dim_closed,
                      "Count cells that merely touch the set along an edge or corner");
  dimension->add_option("--input", dim_input, "Binary triangle list to count");
  dimension->add_option("--csv", dim_csv, "(m, N(m)) table");
  dimension->add_option("--json", dim_json, "Fit summary");

  // simulate
  std::string scenario_path, simulate_out;
  auto* simulate = app.add_subcommand("simulate", "Optimize firms and report welfare");
  simulate->add_option("scenario", scenario_path, "Scenario JSON")->required();
  simulate->add_option("-o,--out", simulate_out, "Report file (default stdout)");

  // prob
  PanelOptions prob_opts;
  std::string prob_method = "empirical", prob_out;
  auto* prob = app.add_subcommand("prob", "Insolvency probability P(e <= 0 | d > 0)");
  add_panel_options(prob, prob_opts);
  prob->add_option("--method", prob_method)->check(CLI::IsMember({"empirical", "geometric"}));
  prob->add_option("-o,--out", prob_out, "Report file (default stdout)");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  const GasketLimits limits{global.depth_cap};
  try {
    if (*indices) {
      Panel panel = load_panel(indices_opts, global, err);
      emitter.emit(indices_out, global.format == "json" ? report::indices_json(panel)
                                                        : report::indices_csv(panel));
    } else if (*irbox_cmd) {
      Panel panel = load_panel(irbox_opts, global, err);
      if (gasket_layer >= 0) spec.gasket_depth = gasket_layer;
      emitter.emit(irbox_out, report::irbox_svg(panel, spec, limits));
    } else if (*gasket) {
      GasketState state = build_gasket(gasket_depth, limits);
      if (!gasket_svg_path.empty()) emitter.emit(gasket_svg_path, report::gasket_svg(state));
      if (!gasket_bin_path.empty()) {
        std::ostringstream bin(std::ios::binary);
        write_triangle_list(bin, state.depth, state.remaining);
        emitter.emit(gasket_bin_path, bin.str());
      }
      if (!gasket_stats_path.empty() || (gasket_svg_path.empty() && gasket_bin_path.empty())) {
        emitter.emit(gasket_stats_path, report::gasket_stats_json(state));
      }
    } else if (*dimension) {
      std::string source = "gasket";
      CountTarget target = CountTarget::GasketLimit;
      std::vector<DyadicTriangle> triangles;
      int depth = dim_depth;
      ScaleWindow window;
      if (dim_square) {
        source = "square";
        target = CountTarget::FilledTriangles;
        GasketState square = initial_state();
        triangles = square.remaining;
        depth = 0;
        window = {1, 4};
      } else if (!dim_input.empty()) {
        source = "file";
        std::istringstream bin(read_text(dim_input), std::ios::binary);
        TriangleList list = read_triangle_list(bin);
        triangles = std::move(list.triangles);
        depth = list.depth;
        window = default_window(depth);
      } else {
        GasketState state = build_gasket(dim_depth, limits);
        triangles = std::move(state.remaining);
        window = default_window(depth);
      }
      if (dim_window.size() == 2) window = {dim_window[0], dim_window[1]};
      const CellRule rule = dim_closed ? CellRule::Closed : CellRule::Interior;
      BoxCountFit fit = fit_dimension(triangles, depth, window, target, rule);
      if (!dim_csv.empty()) emitter.emit(dim_csv, report::dimension_csv(fit));
      if (!dim_json.empty()) emitter.emit(dim_json, report::dimension_json(fit, source, depth, target, rule));
      if (dim_csv.empty() && dim_json.empty()) {
        emitter.emit("", global.format == "json" ? report::dimension_json(fit, source, depth, target, rule)
                                                 : report::dimension_csv(fit));
      }
    } else if (*simulate) {
      report::Scenario scenario = report::parse_scenario(read_text(scenario_path));
      emitter.emit(simulate_out, report::simulate_json(scenario));
    } else if (*prob) {
      Panel panel = load_panel(prob_opts, global, err);
      auto method = prob_method == "geometric" ? ProbabilityMethod::UniformGeometric
                                               : ProbabilityMethod::Empirical;
      emitter.emit(prob_out, report::probability_json(panel, method));
    }
  } catch (const Error& e) {
    err << "irbox: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "irbox: " << e.what() << "\n";
    return kInputError;
  }
  return kOk;
}

}  // namespace irbox::cli

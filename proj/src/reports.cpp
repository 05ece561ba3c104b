#include "irbox/reports.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "irbox/csv_ingest.hpp"
#include "irbox/svg.hpp"

namespace irbox::report {

using Json = nlohmann::ordered_json;

std::string number(double value) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ptr);
}

namespace {

struct FiriSummary {
  std::size_t count = 0;
  double min = 0, max = 0, mean = 0;
};

FiriSummary summarize(const std::vector<ScoredRecord>& scored) {
  FiriSummary s;
  s.count = scored.size();
  if (scored.empty()) return s;
  s.min = s.max = scored.front().indices.firi;
  double total = 0;
  for (const auto& r : scored) {
    s.min = std::min(s.min, r.indices.firi);
    s.max = std::max(s.max, r.indices.firi);
    total += r.indices.firi;
  }
  s.mean = total / static_cast<double>(scored.size());
  return s;
}

const char* kUndefined = "undefined";

}  // namespace

std::string indices_csv(const Panel& panel) {
  auto scored = score_panel(panel);
  std::ostringstream out;
  out << "firm_id,period,debt,equity,assets,tr,nr,aco,firi,firi_h,firi_v,gear,pi,region\n";
  auto records = panel.records();
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& rec = records[i];
    const auto& ix = scored[i].indices;
    out << csv_escape(rec.firm_id) << ',' << rec.period << ',' << rec.debt.to_string() << ','
        << rec.equity.to_string() << ',' << (rec.assets_synthesized ? "" : rec.assets.to_string())
        << ',' << number(ix.tr) << ',' << number(ix.nr) << ',' << number(ix.aco) << ','
        << number(ix.firi) << ',' << number(ix.firi_h) << ',' << number(ix.firi_v) << ','
        << (ix.gear ? number(*ix.gear) : kUndefined) << ',' << number(ix.pi) << ','
        << to_string(classify_point(rec)) << '\n';
  }
  auto s = summarize(scored);
  out << "# summary: count=" << s.count << " firi_min=" << number(s.min)
      << " firi_max=" << number(s.max) << " firi_mean=" << number(s.mean) << '\n';
  return out.str();
}

std::string indices_json(const Panel& panel) {
  auto scored = score_panel(panel);
  Json rows = Json::array();
  auto records = panel.records();
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& rec = records[i];
    const auto& ix = scored[i].indices;
    Json row;
    row["firm_id"] = rec.firm_id;
    row["period"] = rec.period;
    row["debt"] = rec.debt.to_string();
    row["equity"] = rec.equity.to_string();
    row["assets"] = rec.assets.to_string();
    row["assets_synthesized"] = rec.assets_synthesized;
    row["tr"] = ix.tr;
    row["nr"] = ix.nr;
    row["aco"] = ix.aco;
    row["firi"] = ix.firi;
    row["firi_h"] = ix.firi_h;
    row["firi_v"] = ix.firi_v;
    row["gear"] = ix.gear ? Json(*ix.gear) : Json(kUndefined);
    row["pi"] = ix.pi;
    row["region"] = std::string(to_string(classify_point(rec)));
    rows.push_back(std::move(row));
  }
  auto s = summarize(scored);
  Json doc;
  doc["records"] = std::move(rows);
  doc["summary"] = {{"count", s.count}, {"firi_min", s.min}, {"firi_max", s.max},
                    {"firi_mean", s.mean}};
  return doc.dump(2) + "\n";
}

bool RenderSpec::has_layers() const {
  return points || unity_line || !tr_levels.empty() || !nr_levels.empty() ||
         !aco_levels.empty() || !firi_levels.empty() || gasket_depth.has_value();
}

namespace {

const char* region_colour(Region region) {
  switch (region) {
    case Region::AboveUnity: return "#d62728";
    case Region::OnUnity: return "#000000";
    case Region::BelowUnity: return "#1f77b4";
    case Region::Distress: return "#9467bd";
  }
  return "#000000";
}

void draw_isocline(svg::Document& doc, const svg::Viewport& vp, const Isocline& iso,
                   const char* colour) {
  doc.begin_group(std::string(to_string(iso.kind)) + "-" + report::number(iso.level),
                  "data-level=\"" + report::number(iso.level) + "\"");
  for (const auto& seg : iso.segments) {
    doc.line(vp.map(seg.from.e, seg.from.d), vp.map(seg.to.e, seg.to.d), colour, 1.5);
  }
  doc.end_group();
}

std::vector<svg::Point> triangle_polygon(const DyadicTriangle& t, const svg::Viewport& vp,
                                         double scale) {
  std::vector<svg::Point> pts;
  for (const auto& v : t.vertices()) pts.push_back(vp.map(v.x.to_double() * scale, v.y.to_double() * scale));
  return pts;
}

}  // namespace

std::string irbox_svg(const Panel& panel, const RenderSpec& spec, const GasketLimits& limits) {
  if (!spec.has_layers()) throw Error(ErrorCode::EmptyLayerSet, "no layer requested");
  const IRBox box = build_irbox(panel);
  const double e_lo = box.e_min.value_or(0.0);
  const double margin = 20.0;
  svg::Document doc(spec.width, spec.height);
  svg::Viewport vp(e_lo, 0.0, box.side, box.side, spec.width, spec.height, margin);

  // Frame: first-quadrant box, then the distress strip when present.
  auto origin = vp.map(0.0, box.side);
  auto far = vp.map(box.side, 0.0);
  doc.rect(origin, far.x - origin.x, far.y - origin.y, "none", "#333333");
  if (box.e_min) {
    auto lo = vp.map(e_lo, box.side);
    doc.rect(lo, origin.x - lo.x, far.y - origin.y, "#f3e9f7", "#9467bd");
  }

  if (spec.gasket_depth) {
    GasketState gasket = build_gasket(*spec.gasket_depth, limits);
    doc.begin_group("gasket-" + std::to_string(gasket.depth));
    for (const auto& t : gasket.remaining) {
      doc.polygon(triangle_polygon(t, vp, box.side), "#c8c8c8");
    }
    doc.end_group();
  }
  if (spec.unity_line) {
    auto seg = unity_line(box);
    doc.begin_group("unity-line");
    doc.line(vp.map(seg.from.e, seg.from.d), vp.map(seg.to.e, seg.to.d), "#000000", 1.0, "4 3");
    doc.end_group();
  }
  for (double level : spec.tr_levels) draw_isocline(doc, vp, total_risk_locus(box, level), "#2ca02c");
  for (double level : spec.nr_levels) draw_isocline(doc, vp, net_risk_locus(box, level), "#ff7f0e");
  for (double level : spec.aco_levels) draw_isocline(doc, vp, aco_locus(box, level), "#8c564b");
  for (double level : spec.firi_levels) draw_isocline(doc, vp, firi_rays(box, level), "#e377c2");
  if (spec.points) {
    doc.begin_group("points");
    for (const auto& rec : panel.records()) {
      doc.circle(vp.map(rec.e(), rec.d()), 3.0, region_colour(classify_point(rec)),
                 rec.key() + " " + std::string(to_string(classify_point(rec))));
    }
    doc.end_group();
  }
  return doc.str();
}

std::string gasket_svg(const GasketState& state, double width, double height) {
  svg::Document doc(width, height);
  svg::Viewport vp(0.0, 0.0, 1.0, 1.0, width, height, 10.0);
  auto top_left = vp.map(0.0, 1.0);
  auto bottom_right = vp.map(1.0, 0.0);
  doc.rect(top_left, bottom_right.x - top_left.x, bottom_right.y - top_left.y, "#ffffff",
           "#333333");
  doc.begin_group("gasket-" + std::to_string(state.depth));
  for (const auto& t : state.remaining) doc.polygon(triangle_polygon(t, vp, 1.0), "#202020");
  doc.end_group();
  return doc.str();
}

std::string gasket_stats_json(const GasketState& state) {
  Json doc;
  doc["depth"] = state.depth;
  doc["remaining"] = state.remaining.size();
  doc["removed_last_step"] = state.removed_last_step;
  doc["removed_total"] = state.removed_count_total;
  doc["area_removed"] = state.area_removed.to_string();
  doc["area_remaining"] = enumerated_area(state.remaining).to_string();
  doc["area_removed_closed_form"] = closed_form_area_removed(state.depth).to_string();
  doc["perimeter_coefficient"] = state.perimeter_coefficient.to_string();
  doc["perimeter_coefficient_closed_form"] = closed_form_perimeter(state.depth).to_string();
  doc["perimeter"] = perimeter_value(state.perimeter_coefficient);
  doc["cumulative_perimeter_series"] = cumulative_perimeter_series(state.depth).to_string();
  return doc.dump(2) + "\n";
}

std::string dimension_csv(const BoxCountFit& fit) {
  std::ostringstream out;
  out << "m,occupied\n";
  for (const auto& s : fit.samples) out << s.scale_log2 << ',' << s.occupied << '\n';
  return out.str();
}

std::string dimension_json(const BoxCountFit& fit, const std::string& source, int depth,
                           CountTarget target, CellRule rule) {
  Json samples = Json::array();
  for (const auto& s : fit.samples) samples.push_back({{"m", s.scale_log2}, {"occupied", s.occupied}});
  Json doc;
  doc["source"] = source;
  doc["depth"] = depth;
  doc["target"] = target == CountTarget::GasketLimit ? "gasket-limit" : "filled";
  doc["cell_rule"] = rule == CellRule::Interior ? "interior" : "closed";
  doc["window"] = {fit.window.m_min, fit.window.m_max};
  doc["dimension"] = fit.dimension;
  doc["fit_quality"] = fit.fit_quality;
  doc["log3_over_log2"] = std::log(3.0) / std::log(2.0);
  doc["samples"] = std::move(samples);
  return doc.dump(2) + "\n";
}

namespace {

double required_number(const Json& obj, const char* field, const std::string& where) {
  if (!obj.contains(field) || !obj[field].is_number()) {
    throw Error(ErrorCode::SchemaViolation,
                where + ": field '" + field + "' must be present and numeric");
  }
  return obj[field].get<double>();
}

}  // namespace

Scenario parse_scenario(const std::string& json_text) {
  Json doc;
  try {
    doc = Json::parse(json_text);
  } catch (const Json::parse_error& err) {
    throw Error(ErrorCode::SchemaViolation, std::string("scenario is not valid JSON: ") + err.what());
  }
  if (!doc.is_object() || !doc.contains("params") || !doc["params"].is_object()) {
    throw Error(ErrorCode::SchemaViolation, "scenario needs a 'params' object");
  }
  if (!doc.contains("firms") || !doc["firms"].is_array() || doc["firms"].empty()) {
    throw Error(ErrorCode::SchemaViolation, "scenario needs a non-empty 'firms' array");
  }
  Scenario sc;
  const Json& p = doc["params"];
  sc.params.r = required_number(p, "r", "params");
  sc.params.z = required_number(p, "z", "params");
  sc.params.tau = required_number(p, "tau", "params");
  sc.params.p = required_number(p, "p", "params");
  sc.params.pi_store = required_number(p, "pi_store", "params");
  std::size_t index = 0;
  for (const Json& f : doc["firms"]) {
    std::string where = "firms[" + std::to_string(index) + "]";
    if (!f.is_object()) throw Error(ErrorCode::SchemaViolation, where + " must be an object");
    ScenarioFirm firm;
    if (f.contains("id")) {
      if (!f["id"].is_string()) throw Error(ErrorCode::SchemaViolation, where + ": 'id' must be a string");
      firm.id = f["id"].get<std::string>();
    } else {
      firm.id = "firm" + std::to_string(index);
    }
    firm.d = required_number(f, "d", where);
    firm.e = required_number(f, "e", where);
    firm.x = required_number(f, "x", where);
    sc.firms.push_back(std::move(firm));
    ++index;
  }
  return sc;
}

std::string simulate_json(const Scenario& scenario) {
  std::vector<FirmOutcome> outcomes;
  for (const auto& firm : scenario.firms) {
    try {
      FirmOutcome o = optimize_firm(firm.d, firm.e, firm.x, scenario.params);
      o.id = firm.id;
      outcomes.push_back(std::move(o));
    } catch (const Error& err) {
      throw Error(err.code(), firm.id + ": " + err.what());
    }
  }
  WelfareReport w = welfare(outcomes, scenario.params);

  Json firms = Json::array();
  for (const auto& o : outcomes) {
    firms.push_back({{"id", o.id},
                     {"d", o.choice.d},
                     {"e", o.choice.e},
                     {"x", o.choice.x},
                     {"y", o.choice.y},
                     {"y_upper", o.y_upper},
                     {"funding_fraction", o.funding_fraction},
                     {"utility", o.utility},
                     {"debt_risk_free", o.debt_risk_free}});
  }
  const auto& pr = scenario.params;
  Json doc;
  doc["params"] = {{"r", pr.r}, {"z", pr.z}, {"tau", pr.tau}, {"p", pr.p}, {"pi_store", pr.pi_store}};
  doc["firms"] = std::move(firms);
  doc["welfare"] = {{"p1", w.p1},
                    {"p2", w.p2},
                    {"p2_at_policy", w.p2_at_policy},
                    {"w", w.w},
                    {"w_at_policy", w.w_at_policy},
                    {"equilibrium_pi", w.equilibrium_pi},
                    {"aggregate_assets", w.aggregate_assets}};
  return doc.dump(2) + "\n";
}

std::string probability_json(const Panel& panel, ProbabilityMethod method) {
  Json doc;
  const double probability = insolvency_probability(panel, method);
  if (method == ProbabilityMethod::Empirical) {
    std::size_t conditioning = 0, insolvent = 0;
    for (const auto& rec : panel.records()) {
      if (rec.debt.sign() > 0) {
        ++conditioning;
        if (rec.equity.sign() <= 0) ++insolvent;
      }
    }
    doc["method"] = "empirical";
    doc["probability"] = probability;
    doc["conditioning_count"] = conditioning;
    doc["insolvent_count"] = insolvent;
  } else {
    IRBox box = build_irbox(panel);
    doc["method"] = "uniform-geometric";
    doc["probability"] = probability;
    doc["measure"] = "uniform on [e_min, side] x (0, side]";
    doc["e_min"] = *box.e_min;
    doc["side"] = box.side;
  }
  return doc.dump(2) + "\n";
}

}  // namespace irbox::report

#include "irbox/csv_ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <istream>
#include <map>

namespace irbox {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

Error schema_error(std::size_t line, const std::string& what) {
  return Error(ErrorCode::SchemaViolation, "line " + std::to_string(line) + ": " + what);
}

}  // namespace

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        current.push_back('"');
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        current.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back(trim(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  fields.emplace_back(trim(current));
  return fields;
}

std::string csv_escape(std::string_view field) {
  bool needs_quotes = field.find_first_of(",\"\n") != std::string_view::npos ||
                      (!field.empty() && (field.front() == ' ' || field.back() == ' '));
  if (!needs_quotes) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

CsvTable read_balance_sheet_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::map<std::string, std::size_t> columns;
  bool have_header = false;
  CsvTable table;

  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = trim(line);
    if (view.empty() || view.front() == '#') continue;
    auto fields = split_csv_line(view);

    if (!have_header) {
      for (std::size_t i = 0; i < fields.size(); ++i) {
        std::string name = fields[i];
        std::transform(name.begin(), name.end(), name.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        if (!columns.emplace(name, i).second) {
          throw schema_error(line_no, "duplicate column '" + name + "'");
        }
      }
      for (const char* required : {"firm_id", "period", "debt", "equity"}) {
        if (!columns.contains(required)) {
          throw schema_error(line_no, std::string("missing required column '") + required + "'");
        }
      }
      have_header = true;
      continue;
    }

    auto cell = [&](const char* name) -> std::optional<std::string> {
      auto it = columns.find(name);
      if (it == columns.end()) return std::nullopt;
      if (it->second >= fields.size()) {
        throw schema_error(line_no, std::string("row has no value for column '") + name + "'");
      }
      return fields[it->second];
    };
    auto amount = [&](const char* name) -> Decimal {
      std::string text = *cell(name);
      try {
        return Decimal::parse(text);
      } catch (const Error& err) {
        throw schema_error(line_no, std::string("column '") + name + "': " + err.what());
      }
    };

    std::string firm_id = *cell("firm_id");
    if (firm_id.empty()) throw schema_error(line_no, "empty firm_id");
    std::string period_text = *cell("period");
    std::int64_t period = -1;
    auto [ptr, ec] =
        std::from_chars(period_text.data(), period_text.data() + period_text.size(), period);
    if (ec != std::errc() || ptr != period_text.data() + period_text.size() || period < 0) {
      throw schema_error(line_no, "column 'period': '" + period_text +
                                      "' is not a non-negative integer");
    }
    Decimal debt = amount("debt");
    Decimal equity = amount("equity");
    std::optional<Decimal> assets;
    if (auto raw = cell("assets"); raw && !raw->empty()) assets = amount("assets");

    table.records.push_back(
        BalanceSheetRecord::make(std::move(firm_id), period, debt, equity, assets));
    table.line_numbers.push_back(line_no);
  }
  if (!have_header) throw schema_error(line_no, "missing header row");
  return table;
}

std::vector<RowIssue> validate_rows(const CsvTable& table, double tol_rel, bool distress_mode) {
  std::vector<RowIssue> issues;
  for (std::size_t i = 0; i < table.records.size(); ++i) {
    const auto& rec = table.records[i];
    auto result = validate_record(rec, tol_rel, distress_mode);
    if (!result) issues.push_back({table.line_numbers[i], rec.key(), *result.failure, result.detail});
  }
  return issues;
}

}  // namespace irbox

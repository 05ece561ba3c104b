#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "irbox/core_model.hpp"

namespace irbox {

/// Rows read from a balance-sheet CSV.
///
/// Schema: a header naming at least firm_id, period, debt, equity and
/// optionally assets (any order; other columns are ignored). Blank lines and
/// lines starting with '#' are skipped. An empty assets cell means "absent".
struct CsvTable {
  std::vector<BalanceSheetRecord> records;
  std::vector<std::size_t> line_numbers;  ///< 1-based source line per record
};

/// Throws Error(SchemaViolation) naming the line and column at fault.
CsvTable read_balance_sheet_csv(std::istream& in);

struct RowIssue {
  std::size_t line = 0;
  std::string key;
  ErrorCode code;
  std::string detail;
};

std::vector<RowIssue> validate_rows(const CsvTable& table, double tol_rel, bool distress_mode);

/// Splits one CSV line, honouring double-quoted fields with "" escapes.
std::vector<std::string> split_csv_line(std::string_view line);
/// Quotes a field if it holds a comma, quote or leading/trailing space.
std::string csv_escape(std::string_view field);

}  // namespace irbox

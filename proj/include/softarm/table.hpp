#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace softarm {

using Cell = std::variant<double, long long, std::string>;

/// Column-ordered output rows plus optional summary fields. CSV carries the
/// rows only; JSON carries both.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::pair<std::string, Cell>> summary;

  /// Throws std::invalid_argument if the row width differs from the header.
  void add(std::vector<Cell> row);
};

enum class OutputFormat { Csv, Json };

/// Accepts "csv" or "json"; throws ConfigError otherwise.
OutputFormat parse_output_format(std::string_view name);

/// 17 significant digits ("%.17g"); non-finite values print as nan/inf/-inf.
std::string format_double(double x);

void write_csv(std::ostream& os, const Table& t);

/// {"columns": [...], "rows": [{column: value, ...}, ...], "summary": {...}}.
/// Doubles use the shortest text that reads back to the same value;
/// non-finite values become null.
void write_json(std::ostream& os, const Table& t);

void write_table(std::ostream& os, const Table& t, OutputFormat format);

}  // namespace softarm

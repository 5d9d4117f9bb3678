#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include <json.hpp>

#include "eland/error.hpp"

namespace eland {

/// Shortest round-trip decimal text for a double ('.' decimal, no locale).
std::string format_number(double value);

/// CSV with a header row, '.' decimals and '\n' line endings.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);

  void row(std::initializer_list<double> values);
  void row(const std::vector<double>& values);
  /// Pre-formatted cells, for rows that carry text (e.g. a status column).
  void row_text(const std::vector<std::string>& cells);

  const std::string& str() const noexcept { return out_; }
  std::size_t columns() const noexcept { return columns_; }

 private:
  std::size_t columns_;
  std::string out_;
};

/// Pretty-printed JSON with sorted keys and a trailing newline.
std::string dump_json(const nlohmann::json& j);

/// {"error": {"kind": ..., "message": ...}} plus the last residual for
/// numeric failures.
nlohmann::json error_to_json(const Error& e);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace eland

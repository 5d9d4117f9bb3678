#include "eland/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace eland {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::domain: return "domain";
    case ErrorKind::assumption: return "assumption";
    case ErrorKind::numeric: return "numeric";
    case ErrorKind::insufficient_data: return "insufficient_data";
    case ErrorKind::bracket: return "bracket";
    case ErrorKind::budget: return "budget";
    case ErrorKind::monotonicity: return "monotonicity";
    case ErrorKind::undefined: return "undefined";
    case ErrorKind::usage: return "usage";
  }
  return "unknown";
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

CsvWriter::CsvWriter(std::vector<std::string> header) : columns_(header.size()) {
  require(!header.empty(), ErrorKind::usage, "csv: empty header");
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out_ += ',';
    out_ += header[i];
  }
  out_ += '\n';
}

void CsvWriter::row(std::initializer_list<double> values) {
  row(std::vector<double>(values));
}

void CsvWriter::row(const std::vector<double>& values) {
  require(values.size() == columns_, ErrorKind::usage, "csv: row width mismatch");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out_ += ',';
    out_ += format_number(values[i]);
  }
  out_ += '\n';
}

void CsvWriter::row_text(const std::vector<std::string>& cells) {
  require(cells.size() == columns_, ErrorKind::usage, "csv: row width mismatch");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ += ',';
    out_ += cells[i];
  }
  out_ += '\n';
}

std::string dump_json(const nlohmann::json& j) {
  // nlohmann::json keeps object keys in a std::map, so keys come out sorted.
  return j.dump(2) + "\n";
}

nlohmann::json error_to_json(const Error& e) {
  nlohmann::json body = {{"kind", to_string(e.kind())}, {"message", e.what()}};
  if (const auto* ne = dynamic_cast<const NumericError*>(&e)) body["last_residual"] = ne->last_residual();
  return {{"error", body}};
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorKind::usage, "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  require(static_cast<bool>(out), ErrorKind::usage, "cannot write " + path);
  out << text;
  require(static_cast<bool>(out), ErrorKind::usage, "write failed for " + path);
}

}  // namespace eland

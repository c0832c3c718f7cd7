#include "casimir/cli/table.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace casimir::cli {

namespace {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_number(const std::string& field, std::size_t line) {
  if (field == "nan") return std::nan("");
  double v = 0.0;
  const char* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw std::runtime_error("table line " + std::to_string(line) + ": not a number: '" + field + "'");
  }
  return v;
}

// Error messages may not contain the separator or line breaks.
std::string sanitize(std::string s) {
  for (char& ch : s) {
    if (ch == ',' || ch == '\n' || ch == '\r') ch = ';';
  }
  return s;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

std::size_t Table::column_index(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return i;
  }
  throw std::invalid_argument("no column named '" + name + "'");
}

std::vector<double> Table::column(const std::string& name) const {
  const std::size_t j = column_index(name);
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& row : rows) out.push_back(row[j]);
  return out;
}

void Table::add_row(std::vector<double> values, std::string error) {
  if (values.size() != columns.size()) throw std::invalid_argument("row width does not match columns");
  rows.push_back(std::move(values));
  errors.push_back(std::move(error));
}

void write_table(std::ostream& out, const Table& table) {
  for (const auto& c : table.comments) {
    std::istringstream lines(c);
    std::string line;
    while (std::getline(lines, line)) out << "# " << line << "\n";
  }
  for (const auto& c : table.columns) out << c << ",";
  out << "error\n";
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    for (double v : table.rows[i]) out << format_number(v) << ",";
    out << sanitize(table.errors[i]) << "\n";
  }
}

void write_table(const std::filesystem::path& path, const Table& table) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_table(out, table);
  if (!out) throw std::runtime_error("error while writing " + path.string());
}

Table read_table(std::istream& in) {
  Table t;
  std::string line;
  std::size_t line_no = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line[0] == '#') {
      t.comments.push_back(line.size() > 2 ? line.substr(2) : std::string());
      continue;
    }
    auto fields = split(line);
    if (!header) {
      if (fields.empty() || fields.back() != "error") {
        throw std::runtime_error("table line " + std::to_string(line_no) + ": missing 'error' column");
      }
      fields.pop_back();
      t.columns = std::move(fields);
      header = true;
      continue;
    }
    if (fields.size() != t.columns.size() + 1) {
      throw std::runtime_error("table line " + std::to_string(line_no) + ": expected " +
                               std::to_string(t.columns.size() + 1) + " fields");
    }
    std::vector<double> row;
    row.reserve(t.columns.size());
    for (std::size_t j = 0; j < t.columns.size(); ++j) row.push_back(parse_number(fields[j], line_no));
    t.rows.push_back(std::move(row));
    t.errors.push_back(fields.back());
  }
  if (!header) throw std::runtime_error("table has no header line");
  return t;
}

Table read_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_table(in);
}

}  // namespace casimir::cli

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace casimir::cli {

/// Numeric columns plus a free-text error column. Failed rows carry NaN values.
struct Table {
  std::vector<std::string> comments;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::string> errors;

  std::size_t column_index(const std::string& name) const;
  std::vector<double> column(const std::string& name) const;
  void add_row(std::vector<double> values, std::string error = {});
};

/// CSV with '#'-prefixed comment lines. Numbers use %.17g, so reading back is exact.
void write_table(std::ostream& out, const Table& table);
void write_table(const std::filesystem::path& path, const Table& table);
Table read_table(std::istream& in);
Table read_table(const std::filesystem::path& path);

}  // namespace casimir::cli

#pragma once

#include "npsobol/sobol.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace npsobol {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> line_numbers; // source line of each row, 1-based
};

/// Comma-separated, header row first, optional UTF-8 BOM, no quoting.
CsvTable parse_csv(std::istream& in);
CsvTable read_csv(const std::filesystem::path& path);

/// Parses a numeric cell; row/column are 1-based for error messages.
double parse_number(const std::string& cell, std::size_t row, std::size_t column);

/// Splits a numeric table into inputs and the named response column.
Dataset dataset_from_csv(const CsvTable& table, const std::string& response_column);

void write_dataset_csv(const Dataset& data, const std::filesystem::path& path);

/// Shortest representation that round-trips exactly.
std::string format_double(double v);

} // namespace npsobol

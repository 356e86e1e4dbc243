#include "npsobol/csv.hpp"

#include "npsobol/errors.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

namespace npsobol {

namespace {

std::string trim(std::string s)
{
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos)
    return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& line)
{
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ','))
    cells.push_back(trim(cell));
  if (!line.empty() && line.back() == ',')
    cells.emplace_back();
  return cells;
}

} // namespace

CsvTable parse_csv(std::istream& in)
{
  CsvTable table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0)
      line.erase(0, 3);
    if (trim(line).empty())
      continue;
    auto cells = split(line);
    if (table.header.empty()) {
      for (std::size_t c = 0; c < cells.size(); ++c)
        if (cells[c].empty())
          throw InputError("empty column name in header", line_no, c + 1);
      table.header = std::move(cells);
      continue;
    }
    if (cells.size() != table.header.size())
      throw InputError("expected " + std::to_string(table.header.size()) + " cells, found " +
                         std::to_string(cells.size()),
                       line_no);
    table.rows.push_back(std::move(cells));
    table.line_numbers.push_back(line_no);
  }
  if (table.header.empty())
    throw InputError("CSV input is empty");
  return table;
}

CsvTable read_csv(const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in)
    throw InputError("cannot open " + path.string());
  return parse_csv(in);
}

double parse_number(const std::string& cell, std::size_t row, std::size_t column)
{
  double v = 0.0;
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  if (first != last && *first == '+')
    ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (cell.empty() || ec != std::errc() || ptr != last || !std::isfinite(v))
    throw InputError("non-numeric cell '" + cell + "'", row, column);
  return v;
}

Dataset dataset_from_csv(const CsvTable& table, const std::string& response_column)
{
  std::size_t response_idx = table.header.size();
  for (std::size_t c = 0; c < table.header.size(); ++c)
    if (table.header[c] == response_column)
      response_idx = c;
  if (response_idx == table.header.size())
    throw InputError("response column '" + response_column + "' not found in header", 1);
  if (table.header.size() < 2)
    throw InputError("CSV needs at least one input column besides the response", 1);
  if (table.rows.size() < 3)
    throw InputError("CSV needs at least 3 data rows, found " +
                     std::to_string(table.rows.size()));

  Dataset data;
  data.response_name = response_column;
  for (std::size_t c = 0; c < table.header.size(); ++c) {
    if (c == response_idx)
      continue;
    data.names.push_back(table.header[c]);
    data.columns.emplace_back();
  }
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    std::size_t input = 0;
    for (std::size_t c = 0; c < table.header.size(); ++c) {
      const std::size_t line = r < table.line_numbers.size() ? table.line_numbers[r] : r + 2;
      const double v = parse_number(table.rows[r][c], line, c + 1);
      if (c == response_idx)
        data.response.push_back(v);
      else
        data.columns[input++].push_back(v);
    }
  }
  return data;
}

std::string format_double(double v)
{
  if (std::isnan(v))
    return "nan";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc())
    throw std::runtime_error("number formatting failed");
  return std::string(buf, ptr);
}

void write_dataset_csv(const Dataset& data, const std::filesystem::path& path)
{
  std::ofstream out(path);
  if (!out)
    throw InputError("cannot write " + path.string());
  for (const auto& name : data.names)
    out << name << ',';
  out << data.response_name << '\n';
  for (std::size_t k = 0; k < data.rows(); ++k) {
    for (const auto& col : data.columns)
      out << format_double(col[k]) << ',';
    out << format_double(data.response[k]) << '\n';
  }
  if (!out)
    throw InputError("write failed for " + path.string());
}

} // namespace npsobol

#include "welfarelens/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <vector>

namespace welfarelens {
namespace {

std::string strip(std::string cell) {
  auto issp = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
  std::size_t b = 0, e = cell.size();
  while (b < e && issp(cell[b])) ++b;
  while (e > b && issp(cell[e - 1])) --e;
  cell = cell.substr(b, e - b);
  if (cell.size() >= 2 && cell.front() == '"' && cell.back() == '"') {
    cell = cell.substr(1, cell.size() - 2);
  }
  return cell;
}

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  for (;;) {
    std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      cells.push_back(strip(line.substr(start)));
      return cells;
    }
    cells.push_back(strip(line.substr(start, comma - start)));
    start = comma + 1;
  }
}

double parse_number(const std::string& cell, const std::string& what,
                    std::size_t row) {
  double out = 0.0;
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc{} || ptr != last) {
    throw CsvError("unparsable " + what + " '" + cell + "' at row " +
                   std::to_string(row));
  }
  return out;
}

std::size_t find_column(const std::vector<std::string>& header,
                        const std::string& name) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw CsvError("column '" + name + "' not found in header");
}

}  // namespace

EmpiricalSample from_csv_column(std::istream& in, const std::string& column,
                                const std::string& weight_column) {
  std::string line;
  if (!std::getline(in, line)) throw CsvError("empty input: missing header row");
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) {
    line.erase(0, 3);  // UTF-8 byte-order mark
  }
  const std::vector<std::string> header = split_row(line);
  const std::size_t value_idx = find_column(header, column);
  const bool weighted = !weight_column.empty();
  const std::size_t weight_idx =
      weighted ? find_column(header, weight_column) : 0;

  std::vector<double> values, weights;
  std::size_t row = 1;  // header row
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || line == "\r") continue;
    const std::vector<std::string> cells = split_row(line);
    if (value_idx >= cells.size() || cells[value_idx].empty()) {
      throw CsvError("empty income cell at row " + std::to_string(row));
    }
    const double x = parse_number(cells[value_idx], "income", row);
    if (!std::isfinite(x)) {
      throw CsvError("non-finite income at row " + std::to_string(row));
    }
    if (x < 0.0) {
      throw CsvError("negative income at row " + std::to_string(row));
    }
    values.push_back(x);
    if (weighted) {
      if (weight_idx >= cells.size() || cells[weight_idx].empty()) {
        throw CsvError("empty weight cell at row " + std::to_string(row));
      }
      const double w = parse_number(cells[weight_idx], "weight", row);
      if (!(w > 0.0) || !std::isfinite(w)) {
        throw CsvError("non-positive weight at row " + std::to_string(row));
      }
      weights.push_back(w);
    }
  }
  if (values.empty()) throw CsvError("no data rows after the header");

  try {
    return weighted ? EmpiricalSample(std::move(values), std::move(weights))
                    : EmpiricalSample(std::move(values));
  } catch (const std::domain_error& e) {
    throw CsvError(e.what());
  }
}

EmpiricalSample from_csv_column(const std::string& path,
                                const std::string& column,
                                const std::string& weight_column) {
  std::ifstream in(path);
  if (!in) throw CsvError("cannot open '" + path + "'");
  return from_csv_column(in, column, weight_column);
}

}  // namespace welfarelens

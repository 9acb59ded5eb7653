#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "welfarelens/distributions.hpp"

// Comma-delimited UTF-8 ingestion. A header row is required; incomes come
// from a named column, optional weights from another. Diagnostics carry
// 1-based row numbers counted from the header so they match what an editor
// shows.

namespace welfarelens {

class CsvError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

EmpiricalSample from_csv_column(std::istream& in, const std::string& column,
                                const std::string& weight_column = "");

EmpiricalSample from_csv_column(const std::string& path,
                                const std::string& column,
                                const std::string& weight_column = "");

}  // namespace welfarelens

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace smotelab {

/// Where a one-dimensional real-data series lives and how to read it.
struct DatasetRef {
  std::string path;
  std::variant<std::string, std::size_t> column = std::string{};  // header name or 0-based index
  std::optional<double> missing_sentinel;
  char delimiter = ',';
  char decimal = '.';

  std::string column_label() const;
};

struct LoadedColumn {
  std::vector<double> values;
  std::size_t dropped = 0;     // sentinel, empty or NA cells in data rows
  std::size_t blank_rows = 0;  // rows with every field empty
  std::string column_name;
};

/// Reads one numeric column of a delimited text file with a header row.
/// Throws FileNotFound, ColumnNotFound (listing the available columns),
/// ParseError (with the 1-based line number) or EmptyAfterCleaning.
LoadedColumn load_column(const DatasetRef& ref);

struct Normalized {
  std::vector<double> values;
  double min = 0.0;
  double max = 1.0;
};

/// x -> (x - min) / (max - min). Throws DegenerateRange when max == min.
Normalized normalize_minmax(const std::vector<double>& values);

/// Inverse of normalize_minmax.
std::vector<double> denormalize(const std::vector<double>& unit, double min, double max);

}  // namespace smotelab

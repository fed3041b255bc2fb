#include "smotelab/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <string_view>

#include "smotelab/error.hpp"

namespace smotelab {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

// Splits one line; double quotes group delimiters, "" is an escaped quote.
std::vector<std::string> split_fields(std::string_view line, char delimiter) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        current.push_back('"');
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        current.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == delimiter) {
      fields.emplace_back(trim(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  fields.emplace_back(trim(current));
  return fields;
}

bool is_missing_token(std::string_view s) {
  return s.empty() || s == "NA" || s == "N/A" || s == "NaN" || s == "nan" || s == "null";
}

std::string join(const std::vector<std::string>& names) {
  std::string out;
  for (const auto& n : names) {
    if (!out.empty()) out += ", ";
    out += n;
  }
  return out;
}

}  // namespace

std::string DatasetRef::column_label() const {
  if (const auto* name = std::get_if<std::string>(&column)) return *name;
  return "#" + std::to_string(std::get<std::size_t>(column));
}

LoadedColumn load_column(const DatasetRef& ref) {
  if (ref.delimiter == ref.decimal) {
    throw Error(ErrorCode::InvalidArgument, "delimiter and decimal separator must differ");
  }
  if (!std::filesystem::exists(ref.path)) {
    throw Error(ErrorCode::FileNotFound, "no such file: " + ref.path);
  }
  std::ifstream in(ref.path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + ref.path);

  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  while (header.empty() && std::getline(in, line)) {
    ++line_no;
    if (!trim(line).empty()) header = split_fields(line, ref.delimiter);
  }
  if (header.empty()) throw Error(ErrorCode::ParseError, ref.path + ": no header row");

  LoadedColumn out;
  std::size_t col = 0;
  if (const auto* name = std::get_if<std::string>(&ref.column)) {
    const auto it = std::find(header.begin(), header.end(), *name);
    if (it == header.end()) {
      throw Error(ErrorCode::ColumnNotFound,
                  "column '" + *name + "' not in " + ref.path + "; available: " + join(header));
    }
    col = static_cast<std::size_t>(it - header.begin());
  } else {
    col = std::get<std::size_t>(ref.column);
    if (col >= header.size()) {
      throw Error(ErrorCode::ColumnNotFound,
                  "column index " + std::to_string(col) + " out of range; " + ref.path + " has " +
                      std::to_string(header.size()) + " columns: " + join(header));
    }
  }
  out.column_name = header[col];

  while (std::getline(in, line)) {
    ++line_no;
    const auto fields = split_fields(line, ref.delimiter);
    if (std::all_of(fields.begin(), fields.end(), [](const auto& f) { return f.empty(); })) {
      ++out.blank_rows;
      continue;
    }
    if (col >= fields.size()) {
      throw Error(ErrorCode::ParseError, ref.path + ":" + std::to_string(line_no) + ": only " +
                                             std::to_string(fields.size()) + " fields");
    }
    std::string cell = fields[col];
    if (is_missing_token(cell)) {
      ++out.dropped;
      continue;
    }
    if (ref.decimal != '.') std::replace(cell.begin(), cell.end(), ref.decimal, '.');
    double value = 0.0;
    const char* begin = cell.data();
    const char* end = begin + cell.size();
    if (*begin == '+') ++begin;
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end) {
      throw Error(ErrorCode::ParseError, ref.path + ":" + std::to_string(line_no) +
                                             ": cannot parse '" + fields[col] + "' in column '" +
                                             out.column_name + "'");
    }
    if (!std::isfinite(value) || (ref.missing_sentinel && value == *ref.missing_sentinel)) {
      ++out.dropped;
      continue;
    }
    out.values.push_back(value);
  }
  if (out.values.empty()) {
    throw Error(ErrorCode::EmptyAfterCleaning,
                "column '" + out.column_name + "' of " + ref.path + " has no usable values");
  }
  return out;
}

Normalized normalize_minmax(const std::vector<double>& values) {
  if (values.empty()) throw Error(ErrorCode::EmptySample, "cannot normalize an empty sample");
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  if (!(*hi > *lo)) throw Error(ErrorCode::DegenerateRange, "all values are equal");
  Normalized out{{}, *lo, *hi};
  const double span = *hi - *lo;
  out.values.reserve(values.size());
  for (double v : values) out.values.push_back((v - out.min) / span);
  return out;
}

std::vector<double> denormalize(const std::vector<double>& unit, double min, double max) {
  std::vector<double> out;
  out.reserve(unit.size());
  for (double u : unit) out.push_back(min + u * (max - min));
  return out;
}

}  // namespace smotelab

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "smotelab/experiments.hpp"

namespace smotelab {

/// `n,k,mean,std_error,trials`, rows sorted by (k, n), values with 9
/// significant digits, trailing newline.
std::string format_sweep_csv(const SweepResult& result);
void write_sweep_csv(const SweepResult& result, const std::filesystem::path& path);
std::vector<SweepRow> read_sweep_csv(const std::filesystem::path& path);

/// Generic numeric table with the same number formatting as the sweep CSV.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

std::string format_table_csv(const Table& table);
void write_table_csv(const Table& table, const std::filesystem::path& path);

/// Writes `contents` byte-for-byte; throws IoError on failure.
void write_text_file(const std::filesystem::path& path, const std::string& contents);

/// Shortest-unambiguous-enough decimal form used by every writer ("%.9g").
std::string format_number(double value);

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
};

/// Throws InvalidArgument unless every series is non-empty, has matching x/y
/// lengths, finite values and non-decreasing x.
void validate_plot(const PlotSpec& spec);

/// Self-contained SVG 1.1 line plot: axes with ticks, one polyline per
/// series, a legend entry per series.
std::string render_line_plot_svg(const PlotSpec& spec);
void render_line_plot(const PlotSpec& spec, const std::filesystem::path& path);

/// Mean-vs-n plot with one series per k.
PlotSpec sweep_plot(const SweepResult& result, const std::string& title);

}  // namespace smotelab

#include "smotelab/report.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "smotelab/error.hpp"

namespace smotelab {

namespace {

constexpr std::array<const char*, 8> kPalette = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                                 "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

constexpr double kWidth = 720.0;
constexpr double kHeight = 440.0;
constexpr double kLeft = 72.0;
constexpr double kRight = 180.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 56.0;

std::string fixed2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  if (std::abs(v) < 1e-12) v = 0.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

struct Range {
  double lo;
  double hi;
};

Range padded_range(double lo, double hi, double pad_fraction) {
  if (!(hi > lo)) return {lo - 0.5, hi + 0.5};
  const double pad = (hi - lo) * pad_fraction;
  return {lo - pad, hi + pad};
}

double parse_double(const std::string& field, const std::filesystem::path& path, std::size_t line) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw Error(ErrorCode::ParseError,
                path.string() + ":" + std::to_string(line) + ": bad number '" + field + "'");
  }
  return v;
}

}  // namespace

std::string format_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", value);
  return buf;
}

void write_text_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw Error(ErrorCode::IoError, "write to " + path.string() + " failed");
}

std::string format_sweep_csv(const SweepResult& result) {
  auto rows = result.rows;
  std::stable_sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
    return a.k != b.k ? a.k < b.k : a.n < b.n;
  });
  std::string out = "n,k,mean,std_error,trials\n";
  for (const auto& r : rows) {
    out += std::to_string(r.n) + ',' + std::to_string(r.k) + ',' + format_number(r.mean) + ',' +
           format_number(r.std_error) + ',' + std::to_string(r.trials) + '\n';
  }
  return out;
}

void write_sweep_csv(const SweepResult& result, const std::filesystem::path& path) {
  write_text_file(path, format_sweep_csv(result));
}

std::vector<SweepRow> read_sweep_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::FileNotFound, "cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != "n,k,mean,std_error,trials") {
    throw Error(ErrorCode::ParseError, path.string() + ": missing sweep header");
  }
  std::vector<SweepRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    for (std::string f; std::getline(ss, f, ',');) fields.push_back(f);
    if (fields.size() != 5) {
      throw Error(ErrorCode::ParseError,
                  path.string() + ":" + std::to_string(line_no) + ": expected 5 fields");
    }
    rows.push_back({static_cast<std::size_t>(parse_double(fields[0], path, line_no)),
                    static_cast<std::size_t>(parse_double(fields[1], path, line_no)),
                    parse_double(fields[2], path, line_no), parse_double(fields[3], path, line_no),
                    static_cast<std::size_t>(parse_double(fields[4], path, line_no))});
  }
  return rows;
}

std::string format_table_csv(const Table& table) {
  std::string out;
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    out += (i ? "," : "") + table.header[i];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + format_number(row[i]);
    out += '\n';
  }
  return out;
}

void write_table_csv(const Table& table, const std::filesystem::path& path) {
  write_text_file(path, format_table_csv(table));
}

void validate_plot(const PlotSpec& spec) {
  if (spec.series.empty()) throw Error(ErrorCode::InvalidArgument, "plot has no series");
  for (const auto& s : spec.series) {
    if (s.x.empty()) throw Error(ErrorCode::InvalidArgument, "series '" + s.name + "' is empty");
    if (s.x.size() != s.y.size()) {
      throw Error(ErrorCode::InvalidArgument, "series '" + s.name + "' has mismatched x/y");
    }
    if (!std::is_sorted(s.x.begin(), s.x.end())) {
      throw Error(ErrorCode::InvalidArgument, "series '" + s.name + "' x is not ascending");
    }
    const auto finite = [](double v) { return std::isfinite(v); };
    if (!std::all_of(s.x.begin(), s.x.end(), finite) ||
        !std::all_of(s.y.begin(), s.y.end(), finite)) {
      throw Error(ErrorCode::InvalidArgument, "series '" + s.name + "' has non-finite values");
    }
  }
}

std::string render_line_plot_svg(const PlotSpec& spec) {
  validate_plot(spec);

  double xmin = spec.series[0].x.front(), xmax = xmin;
  double ymin = spec.series[0].y.front(), ymax = ymin;
  for (const auto& s : spec.series) {
    xmin = std::min(xmin, s.x.front());
    xmax = std::max(xmax, s.x.back());
    for (double y : s.y) {
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  }
  const Range xr = padded_range(xmin, xmax, 0.0);
  const Range yr = padded_range(ymin, ymax, 0.05);

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * plot_w; };
  auto py = [&](double y) { return kTop + plot_h - (y - yr.lo) / (yr.hi - yr.lo) * plot_h; };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
      << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" fill=\"white\"/>\n";
  if (!spec.title.empty()) {
    svg << "<text x=\"" << fixed2(kLeft + plot_w / 2) << "\" y=\"22\" text-anchor=\"middle\""
        << " font-size=\"14\">" << xml_escape(spec.title) << "</text>\n";
  }

  svg << "<g class=\"axes\" stroke=\"black\" stroke-width=\"1\">\n"
      << "<line x1=\"" << fixed2(kLeft) << "\" y1=\"" << fixed2(kTop + plot_h) << "\" x2=\""
      << fixed2(kLeft + plot_w) << "\" y2=\"" << fixed2(kTop + plot_h) << "\"/>\n"
      << "<line x1=\"" << fixed2(kLeft) << "\" y1=\"" << fixed2(kTop) << "\" x2=\""
      << fixed2(kLeft) << "\" y2=\"" << fixed2(kTop + plot_h) << "\"/>\n"
      << "</g>\n";

  constexpr int kTicks = 5;
  svg << "<g class=\"ticks\">\n";
  for (int t = 0; t < kTicks; ++t) {
    const double fx = xr.lo + (xr.hi - xr.lo) * t / (kTicks - 1);
    const double fy = yr.lo + (yr.hi - yr.lo) * t / (kTicks - 1);
    svg << "<line x1=\"" << fixed2(px(fx)) << "\" y1=\"" << fixed2(kTop + plot_h) << "\" x2=\""
        << fixed2(px(fx)) << "\" y2=\"" << fixed2(kTop + plot_h + 5) << "\" stroke=\"black\"/>"
        << "<text x=\"" << fixed2(px(fx)) << "\" y=\"" << fixed2(kTop + plot_h + 18)
        << "\" text-anchor=\"middle\">" << tick_label(fx) << "</text>\n";
    svg << "<line x1=\"" << fixed2(kLeft - 5) << "\" y1=\"" << fixed2(py(fy)) << "\" x2=\""
        << fixed2(kLeft) << "\" y2=\"" << fixed2(py(fy)) << "\" stroke=\"black\"/>"
        << "<text x=\"" << fixed2(kLeft - 8) << "\" y=\"" << fixed2(py(fy) + 4)
        << "\" text-anchor=\"end\">" << tick_label(fy) << "</text>\n";
  }
  svg << "</g>\n";

  svg << "<text x=\"" << fixed2(kLeft + plot_w / 2) << "\" y=\"" << fixed2(kHeight - 14)
      << "\" text-anchor=\"middle\">" << xml_escape(spec.x_label) << "</text>\n"
      << "<text x=\"16\" y=\"" << fixed2(kTop + plot_h / 2)
      << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " << fixed2(kTop + plot_h / 2)
      << ")\">" << xml_escape(spec.y_label) << "</text>\n";

  for (std::size_t i = 0; i < spec.series.size(); ++i) {
    const auto& s = spec.series[i];
    svg << "<polyline fill=\"none\" stroke=\"" << kPalette[i % kPalette.size()]
        << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t j = 0; j < s.x.size(); ++j) {
      svg << (j ? " " : "") << fixed2(px(s.x[j])) << ',' << fixed2(py(s.y[j]));
    }
    svg << "\"/>\n";
  }

  svg << "<g class=\"legend\">\n";
  for (std::size_t i = 0; i < spec.series.size(); ++i) {
    const double y = kTop + 10 + 20.0 * static_cast<double>(i);
    const double x = kWidth - kRight + 16;
    svg << "<g class=\"legend-entry\"><line x1=\"" << fixed2(x) << "\" y1=\"" << fixed2(y)
        << "\" x2=\"" << fixed2(x + 24) << "\" y2=\"" << fixed2(y) << "\" stroke=\""
        << kPalette[i % kPalette.size()] << "\" stroke-width=\"2\"/><text x=\"" << fixed2(x + 30)
        << "\" y=\"" << fixed2(y + 4) << "\">" << xml_escape(spec.series[i].name)
        << "</text></g>\n";
  }
  svg << "</g>\n</svg>\n";
  return svg.str();
}

void render_line_plot(const PlotSpec& spec, const std::filesystem::path& path) {
  write_text_file(path, render_line_plot_svg(spec));
}

PlotSpec sweep_plot(const SweepResult& result, const std::string& title) {
  PlotSpec spec;
  spec.title = title;
  spec.x_label = "sample size n";
  spec.y_label = std::string(to_string(result.config.metric));
  std::map<std::size_t, Series> by_k;
  auto rows = result.rows;
  std::stable_sort(rows.begin(), rows.end(),
                   [](const SweepRow& a, const SweepRow& b) { return a.n < b.n; });
  for (const auto& row : rows) {
    auto& s = by_k[row.k];
    s.name = "k=" + std::to_string(row.k);
    s.x.push_back(static_cast<double>(row.n));
    s.y.push_back(row.mean);
  }
  for (auto& [k, s] : by_k) spec.series.push_back(std::move(s));
  return spec;
}

}  // namespace smotelab

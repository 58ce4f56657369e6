#include "qliang/plot.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace qliang {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_cell(const std::string& cell) {
  double value = 0.0;
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  const auto res = std::from_chars(begin, end, value);
  if (res.ec != std::errc() || res.ptr != end) {
    throw PlotError("malformed CSV: non-numeric cell '" + cell + "'");
  }
  return value;
}

std::string fmt(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 6);
  return std::string(buf, res.ptr);
}

constexpr const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                    "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

}  // namespace

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PlotError("cannot open CSV '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw PlotError("malformed CSV: empty file");
  CsvTable table;
  table.columns = split_line(line);
  if (table.columns.size() < 2) throw PlotError("malformed CSV: need at least two columns");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split_line(line);
    if (cells.size() != table.columns.size()) {
      throw PlotError("malformed CSV: ragged row");
    }
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& c : cells) row.push_back(parse_cell(c));
    table.rows.push_back(std::move(row));
  }
  if (table.rows.size() < 2) throw PlotError("malformed CSV: need at least two data rows");
  return table;
}

void plot_csv_to_svg(const std::string& csv_path, const std::string& svg_path) {
  const CsvTable table = read_csv(csv_path);
  const std::size_t n_series = table.columns.size() - 1;

  double x_min = table.rows.front()[0], x_max = x_min;
  double y_min = table.rows.front()[1], y_max = y_min;
  for (const auto& row : table.rows) {
    x_min = std::min(x_min, row[0]);
    x_max = std::max(x_max, row[0]);
    for (std::size_t s = 1; s < row.size(); ++s) {
      y_min = std::min(y_min, row[s]);
      y_max = std::max(y_max, row[s]);
    }
  }
  if (x_max == x_min) x_max = x_min + 1.0;
  if (y_max == y_min) {
    y_min -= 0.5;
    y_max += 0.5;
  } else {
    const double pad = 0.05 * (y_max - y_min);
    y_min -= pad;
    y_max += pad;
  }

  const double width = 800, height = 520;
  const double left = 70, right = width - 170, top = 30, bottom = height - 55;
  auto sx = [&](double x) { return left + (x - x_min) / (x_max - x_min) * (right - left); };
  auto sy = [&](double y) { return bottom - (y - y_min) / (y_max - y_min) * (bottom - top); };

  const std::filesystem::path p(svg_path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(svg_path, std::ios::binary);
  if (!out) throw PlotError("cannot write SVG '" + svg_path + "'");

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<line x1=\"" << left << "\" y1=\"" << bottom << "\" x2=\"" << right << "\" y2=\""
      << bottom << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << bottom
      << "\" stroke=\"black\"/>\n";

  const int n_ticks = 5;
  for (int k = 0; k <= n_ticks; ++k) {
    const double fx = x_min + (x_max - x_min) * k / n_ticks;
    const double fy = y_min + (y_max - y_min) * k / n_ticks;
    out << "<line x1=\"" << sx(fx) << "\" y1=\"" << bottom << "\" x2=\"" << sx(fx) << "\" y2=\""
        << bottom + 5 << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << sx(fx) << "\" y=\"" << bottom + 20
        << "\" font-size=\"12\" text-anchor=\"middle\">" << fmt(fx) << "</text>\n";
    out << "<line x1=\"" << left - 5 << "\" y1=\"" << sy(fy) << "\" x2=\"" << left << "\" y2=\""
        << sy(fy) << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << left - 8 << "\" y=\"" << sy(fy) + 4
        << "\" font-size=\"12\" text-anchor=\"end\">" << fmt(fy) << "</text>\n";
  }
  out << "<text x=\"" << (left + right) / 2 << "\" y=\"" << height - 12
      << "\" font-size=\"14\" text-anchor=\"middle\">t</text>\n";
  out << "<text x=\"18\" y=\"" << (top + bottom) / 2
      << "\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
      << (top + bottom) / 2 << ")\">bits</text>\n";

  for (std::size_t s = 0; s < n_series; ++s) {
    const char* color = kPalette[s % (sizeof(kPalette) / sizeof(kPalette[0]))];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& row : table.rows) {
      out << fmt(sx(row[0])) << ',' << fmt(sy(row[s + 1])) << ' ';
    }
    out << "\"/>\n";
    const double ly = top + 18 * static_cast<double>(s);
    out << "<line x1=\"" << right + 10 << "\" y1=\"" << ly << "\" x2=\"" << right + 30
        << "\" y2=\"" << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << right + 35 << "\" y=\"" << ly + 4 << "\" font-size=\"12\">"
        << table.columns[s + 1] << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace qliang

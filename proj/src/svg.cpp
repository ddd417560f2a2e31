#include "spacebound/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>


namespace spacebound {

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
constexpr double kPanel = 480.0;  // drawing width of one panel
constexpr double kLeft = 90.0;    // room for row labels
constexpr double kTop = 20.0;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Cell {
  std::size_t component;
  Region region;
};

std::string line(double x1, double y1, double x2, double y2) {
  return "  <line x1=\"" + num(x1) + "\" y1=\"" + num(y1) + "\" x2=\"" + num(x2) + "\" y2=\"" + num(y2) +
         "\" stroke=\"#333\" stroke-width=\"1\"/>\n";
}

std::string rect(double x, double y, double w, double h, std::size_t component) {
  return "  <rect x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" + num(w) + "\" height=\"" + num(h) +
         "\" fill=\"" + kPalette[component % std::size(kPalette)] + "\" fill-opacity=\"0.5\" stroke=\"" +
         kPalette[component % std::size(kPalette)] + "\"/>\n";
}

std::string text(double x, double y, std::string_view s, const char* anchor = "start") {
  return "  <text x=\"" + num(x) + "\" y=\"" + num(y) + "\" font-size=\"11\" font-family=\"monospace\" text-anchor=\"" +
         anchor + "\">" + escape(s) + "</text>\n";
}

}  // namespace

std::string render_svg(const std::vector<TimedSpace>& spaces, const TimeOrder& order) {
  int dim = 2;
  for (const auto& ts : spaces) {
    for (const auto& [idx, f] : ts.entries) {
      bool spatial = false;
      for_each_atom(f, [&](const Atom& a) { spatial = spatial || a.is_spatial(); });
      if (spatial) dim = std::max(dim, formula_dim(f));
    }
  }

  // Rows: every entry index, ordered by position of its endpoints.
  std::set<TimeIndex> seen;
  for (const auto& ts : spaces) {
    for (const auto& [idx, f] : ts.entries) seen.insert(idx);
  }
  std::vector<TimeIndex> rows(seen.begin(), seen.end());
  std::sort(rows.begin(), rows.end(), [&](const TimeIndex& a, const TimeIndex& b) {
    return std::pair(order.index_of(a.from), order.index_of(a.to)) <
           std::pair(order.index_of(b.from), order.index_of(b.to));
  });

  std::vector<std::vector<Cell>> cells(rows.size());
  bool any = false;
  Box bounds{};
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < spaces.size(); ++c) {
      auto it = spaces[c].entries.find(rows[r]);
      if (it == spaces[c].entries.end()) continue;
      Region reg = spatial_region(it->second, spaces[c].mode, dim);
      if (reg.empty()) continue;
      const Box bb = *bounding_box(reg);
      if (!any) {
        bounds = bb;
        any = true;
      }
      for (int k = 0; k < 3; ++k) {
        bounds.lo[k] = std::min(bounds.lo[k], bb.lo[k]);
        bounds.hi[k] = std::max(bounds.hi[k], bb.hi[k]);
      }
      cells[r].push_back({c, std::move(reg)});
    }
  }

  const double span_x = any ? static_cast<double>(bounds.hi[0] - bounds.lo[0] + 1) : 1.0;
  const double span_y = any ? static_cast<double>(bounds.hi[1] - bounds.lo[1] + 1) : 1.0;
  const bool projections = dim == 3;
  // 2D rows show the x-y plane; 3D rows are thin bands in the x-t and y-t panels.
  const double scale = kPanel / (projections ? std::max(span_x, span_y) : span_x);
  const double row_h = projections ? 18.0 : std::max(span_y * scale, 4.0) + 12.0;
  const double panels = projections ? 2.0 : 1.0;
  const double width = kLeft + panels * (kPanel + 30.0) + 20.0;
  const double plot_h = std::max<double>(static_cast<double>(rows.size()), 1.0) * row_h;
  const double legend_y = kTop + plot_h + 30.0;
  const double height = legend_y + 20.0 * static_cast<double>(spaces.size()) + 10.0;

  std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width) + "\" height=\"" + num(height) +
                  "\" viewBox=\"0 0 " + num(width) + " " + num(height) + "\">\n";
  for (int p = 0; p < static_cast<int>(panels); ++p) {
    const double x0 = kLeft + p * (kPanel + 30.0);
    s += line(x0, kTop, x0, kTop + plot_h);
    s += line(x0, kTop + plot_h, x0 + kPanel, kTop + plot_h);
    if (projections) s += text(x0 + kPanel / 2, kTop + plot_h + 16.0, p == 0 ? "x" : "y", "middle");
  }
  if (any) {
    s += text(kLeft, kTop + plot_h + 16.0, std::to_string(bounds.lo[0]), "start");
  }

  for (std::size_t r = 0; r < rows.size(); ++r) {
    const double top = kTop + static_cast<double>(r) * row_h;
    s += text(kLeft - 6.0, top + row_h / 2 + 4.0, to_string(rows[r]), "end");
    for (const auto& cell : cells[r]) {
      for (const auto& b : cell.region.boxes()) {
        if (!projections) {
          const double x = kLeft + static_cast<double>(b.lo[0] - bounds.lo[0]) * scale;
          const double y = top + 6.0 + static_cast<double>(bounds.hi[1] - b.hi[1]) * scale;
          s += rect(x, y, static_cast<double>(b.hi[0] - b.lo[0] + 1) * scale,
                    static_cast<double>(b.hi[1] - b.lo[1] + 1) * scale, cell.component);
        } else {
          for (int axis = 0; axis < 2; ++axis) {
            const double x0 = kLeft + axis * (kPanel + 30.0);
            const double x = x0 + static_cast<double>(b.lo[axis] - bounds.lo[axis]) * scale;
            s += rect(x, top + 3.0, static_cast<double>(b.hi[axis] - b.lo[axis] + 1) * scale, row_h - 6.0,
                      cell.component);
          }
        }
      }
    }
  }

  for (std::size_t c = 0; c < spaces.size(); ++c) {
    const double y = legend_y + 20.0 * static_cast<double>(c);
    s += "  <circle cx=\"" + num(kLeft + 6.0) + "\" cy=\"" + num(y) + "\" r=\"5\" fill=\"" +
         kPalette[c % std::size(kPalette)] + "\"/>\n";
    s += text(kLeft + 16.0, y + 4.0, spaces[c].component);
  }
  s += "</svg>\n";
  return s;
}

}  // namespace spacebound

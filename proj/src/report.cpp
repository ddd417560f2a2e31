#include <cstdio>
#include <nlohmann/json.hpp>
#include <sstream>

#include "spacebound/checkers.hpp"

namespace spacebound {

namespace {

using nlohmann::json;

json coords(const LatticePoint& p, int dim) {
  json out = json::array();
  for (int k = 0; k < dim; ++k) out.push_back(p[static_cast<std::size_t>(k)]);
  return out;
}

std::string point_text(const LatticePoint& p, int dim) {
  std::string s = "(";
  for (int k = 0; k < dim; ++k) {
    if (k) s += ",";
    s += std::to_string(p[static_cast<std::size_t>(k)]);
  }
  return s + ")";
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) s += sep;
    s += parts[i];
  }
  return s;
}

std::string upper(std::string_view v) {
  std::string s(v);
  for (auto& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

}  // namespace

std::string report_json(const std::vector<CheckReport>& reports) {
  json doc;
  doc["overall"] = std::string(to_string(overall_verdict(reports)));
  doc["reports"] = json::array();
  for (const auto& r : reports) {
    json jr;
    jr["verdict"] = std::string(to_string(r.verdict));
    jr["property"] = std::string(to_string(r.property));
    jr["components"] = r.components;
    jr["witnesses"] = json::array();
    for (const auto& w : r.witnesses) {
      const int dim = w.region.dim();
      json jw;
      jw["time"] = to_string(w.index);
      jw["time_index"] = {{"from", w.index.from}, {"to", w.index.to}};
      jw["components"] = w.components;
      jw["point"] = w.point ? coords(*w.point, dim) : json(nullptr);
      jw["region"] = json::array();
      for (const auto& b : w.region.boxes()) {
        jw["region"].push_back({{"lo", coords(b.lo, dim)}, {"hi", coords(b.hi, dim)}});
      }
      jr["witnesses"].push_back(std::move(jw));
    }
    jr["stats"] = {{"time_points_examined", r.stats.time_points_examined},
                   {"early_exit", r.stats.early_exit},
                   {"vacuous", r.stats.vacuous},
                   {"wall_time_ms", r.stats.wall_time_ms}};
    doc["reports"].push_back(std::move(jr));
  }
  return doc.dump(2) + "\n";
}

std::string report_text(const std::vector<CheckReport>& reports) {
  std::ostringstream os;
  for (const auto& r : reports) {
    char ms[32];
    std::snprintf(ms, sizeof ms, "%.3f", r.stats.wall_time_ms);
    os << to_string(r.property) << ' ' << join(r.components, " ") << ": " << upper(to_string(r.verdict))
       << " (examined " << r.stats.time_points_examined << (r.stats.vacuous ? ", vacuous" : "")
       << (r.stats.early_exit ? ", early exit" : "") << ", " << ms << " ms)\n";
    for (const auto& w : r.witnesses) {
      const int dim = w.region.dim();
      os << "  at " << to_string(w.index) << " [" << join(w.components, ",") << "]";
      if (w.point) os << " point " << point_text(*w.point, dim);
      if (!w.region.empty()) {
        os << " region";
        for (const auto& b : w.region.boxes()) os << ' ' << point_text(b.lo, dim) << '-' << point_text(b.hi, dim);
      }
      os << '\n';
    }
  }
  os << "overall: " << upper(to_string(overall_verdict(reports))) << '\n';
  return os.str();
}

}  // namespace spacebound

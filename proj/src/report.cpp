#include "toralent/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

namespace toralent {

namespace {

std::string number(const Json& j) {
  if (!j.is_number()) return "";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", j.get<double>());
  return buf;
}

// Quotes a field when it holds a comma, quote or newline.
std::string field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

std::string flags_of(const ResultRecord& r) {
  std::string out;
  if (!r.outputs.contains("flags")) return out;
  for (const auto& f : r.outputs["flags"]) out += (out.empty() ? "" : ";") + f.get<std::string>();
  return out;
}

Json get(const Json& j, const char* key) { return j.contains(key) ? j[key] : Json(nullptr); }

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string records_csv(const std::vector<ResultRecord>& records) {
  std::ostringstream out;
  out << kCsvHeader << '\n';
  for (const auto& r : records) {
    char wall[40];
    std::snprintf(wall, sizeof wall, "%.6f", r.wall_time);
    out << field(r.experiment_id) << ',' << r.config_hash << ',' << field(r.operation) << ',' << number(get(r.inputs, "t"))
        << ',' << field(get(r.inputs, "quantity").is_string() ? r.inputs["quantity"].get<std::string>() : "") << ','
        << number(get(r.outputs, "value")) << ',' << number(get(r.outputs, "residual")) << ',' << field(flags_of(r)) << ','
        << wall << '\n';
  }
  return out.str();
}

std::string records_svg(const std::vector<ResultRecord>& records) {
  std::vector<std::string> order;
  std::map<std::string, std::vector<std::pair<double, double>>> series;
  for (const auto& r : records) {
    const Json t = get(r.inputs, "t"), q = get(r.inputs, "quantity");
    if (!t.is_number() || !q.is_string()) continue;
    const auto name = q.get<std::string>();
    if (!series.count(name)) order.push_back(name);
    const Json v = get(r.outputs, "value");
    series[name].emplace_back(t.get<double>(), v.is_number() ? v.get<double>() : std::nan(""));
  }

  const double w = 640, ph = 200, top = 30, left = 80, right = 20, gap = 60;
  const double height = top + order.size() * (ph + gap) + 10;
  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << height << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (std::size_t k = 0; k < order.size(); ++k) {
    auto pts = series[order[k]];
    std::stable_sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    double t0 = HUGE_VAL, t1 = -HUGE_VAL, v0 = HUGE_VAL, v1 = -HUGE_VAL;
    for (const auto& [t, v] : pts) {
      t0 = std::min(t0, t);
      t1 = std::max(t1, t);
      if (std::isfinite(v)) {
        v0 = std::min(v0, v);
        v1 = std::max(v1, v);
      }
    }
    if (!(v0 <= v1)) v0 = v1 = 0;
    if (t1 - t0 <= 0) t0 -= 0.5, t1 += 0.5;
    if (v1 - v0 <= 0) v0 -= 0.5 * std::max(1e-12, std::abs(v0)), v1 += 0.5 * std::max(1e-12, std::abs(v1));
    const double y0 = top + k * (ph + gap), pw = w - left - right;
    auto px = [&](double t) { return left + (t - t0) / (t1 - t0) * pw; };
    auto py = [&](double v) { return y0 + ph - (v - v0) / (v1 - v0) * ph; };
    s << "<g>\n<text x=\"" << left << "\" y=\"" << y0 - 8 << "\" font-weight=\"bold\">" << escape_xml(order[k]) << "</text>\n";
    s << "<rect x=\"" << left << "\" y=\"" << y0 << "\" width=\"" << pw << "\" height=\"" << ph
      << "\" fill=\"none\" stroke=\"#888\"/>\n";
    s << "<text x=\"" << left - 6 << "\" y=\"" << y0 + 10 << "\" text-anchor=\"end\">" << fmt(v1) << "</text>\n";
    s << "<text x=\"" << left - 6 << "\" y=\"" << y0 + ph << "\" text-anchor=\"end\">" << fmt(v0) << "</text>\n";
    s << "<text x=\"" << left << "\" y=\"" << y0 + ph + 14 << "\">" << fmt(t0) << "</text>\n";
    s << "<text x=\"" << left + pw << "\" y=\"" << y0 + ph + 14 << "\" text-anchor=\"end\">" << fmt(t1) << "</text>\n";
    s << "<text x=\"" << left + pw / 2 << "\" y=\"" << y0 + ph + 14 << "\" text-anchor=\"middle\">t</text>\n";
    std::string path;
    for (const auto& [t, v] : pts) {
      if (!std::isfinite(v)) continue;
      path += (path.empty() ? "" : " ") + fmt(px(t)) + "," + fmt(py(v));
      s << "<circle cx=\"" << fmt(px(t)) << "\" cy=\"" << fmt(py(v)) << "\" r=\"3\" fill=\"#1f77b4\"/>\n";
    }
    if (!path.empty()) s << "<polyline points=\"" << path << "\" fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\"/>\n";
    s << "</g>\n";
  }
  s << "</svg>\n";
  return s.str();
}

ReportFiles emit_report(const std::vector<ResultRecord>& records, const std::string& dir, const std::string& stem) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw OutputError(dir + ": " + ec.message());
  ReportFiles files{(fs::path(dir) / (stem + ".csv")).string(), (fs::path(dir) / (stem + ".svg")).string()};
  auto write = [](const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw OutputError(path + ": cannot open for writing");
    out << text;
    if (!out) throw OutputError(path + ": write failed");
  };
  write(files.csv, records_csv(records));
  write(files.svg, records_svg(records));
  return files;
}

}  // namespace toralent

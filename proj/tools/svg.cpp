#include "svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <optional>

#include "nilorb/error.hpp"

namespace nilorb::cli {

namespace {

using Vec2 = std::array<double, 2>;

constexpr double kScale = 120.0;  // pixels per apartment unit
constexpr double kMargin = 20.0;
constexpr double kLegendLine = 16.0;
constexpr double kCharWidth = 7.0;  // generous average glyph width at 12px
constexpr const char* kFont = "font-size=\"12\" font-family=\"sans-serif\"";

// Screen frame: sp4 uses (x1, x2); sl3 uses an orthonormal basis of the sum-zero plane.
struct Frame {
  Algebra algebra;

  Vec2 functional(const Root& r) const {
    const auto& c = r.coeffs;
    if (algebra == Algebra::SP) return {double(c[0]), double(c[1])};
    const double s2 = std::sqrt(2.0), s6 = std::sqrt(6.0);
    return {(c[0] - c[1]) / s2, (c[0] + c[1] - 2.0 * c[2]) / s6};
  }

  Vec2 project(const ApartmentPoint& x) const {
    std::vector<double> v;
    for (const auto& q : x.coords) v.push_back(q.get_d());
    if (algebra == Algebra::SP) return {v[0], v[1]};
    const double s2 = std::sqrt(2.0), s6 = std::sqrt(6.0);
    return {(v[0] - v[1]) / s2, (v[0] + v[1] - 2.0 * v[2]) / s6};
  }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", std::abs(v) < 5e-3 ? 0.0 : v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else if (c == '&') out += "&amp;";
    else out += c;
  }
  return out;
}

// Segment of the line a.s = k inside the square [-b, b]^2, if any.
std::optional<std::array<Vec2, 2>> clip(const Vec2& a, double k, double b) {
  std::vector<Vec2> hits;
  const auto add = [&](Vec2 s) {
    if (std::abs(s[0]) > b + 1e-9 || std::abs(s[1]) > b + 1e-9) return;
    for (const auto& h : hits)
      if (std::abs(h[0] - s[0]) < 1e-9 && std::abs(h[1] - s[1]) < 1e-9) return;
    hits.push_back(s);
  };
  for (double edge : {-b, b}) {
    if (std::abs(a[1]) > 1e-12) add({edge, (k - a[0] * edge) / a[1]});
    if (std::abs(a[0]) > 1e-12) add({(k - a[1] * edge) / a[0], edge});
  }
  if (hits.size() < 2) return std::nullopt;
  return std::array<Vec2, 2>{hits[0], hits[1]};
}

std::optional<Vec2> intersect(const Vec2& a, double k, const Vec2& c, double l) {
  const double det = a[0] * c[1] - a[1] * c[0];
  if (std::abs(det) < 1e-12) return std::nullopt;
  return Vec2{(k * c[1] - a[1] * l) / det, (a[0] * l - k * c[0]) / det};
}

}  // namespace

std::string render_apartment_svg(const RootDatum& rd, const std::vector<SvgMark>& marks,
                                 const std::vector<AffineSubspace>& highlight, int radius) {
  if (rd.rank() != 2) throw Error(Errc::InvalidArgument, "SVG rendering needs a rank 2 apartment (sl3 or sp4)");
  if (radius < 1) throw Error(Errc::InvalidArgument, "radius must be positive");
  const Frame frame{rd.algebra()};
  double bound = 0.75 * radius;
  for (const auto& m : marks) {
    const auto s = frame.project(m.point);
    bound = std::max({bound, std::abs(s[0]) + 0.25, std::abs(s[1]) + 0.25});
  }
  const double size = 2 * bound * kScale + 2 * kMargin;

  // Coinciding marks share one numbered dot; names go to a legend under the picture.
  std::vector<std::pair<ApartmentPoint, std::vector<std::string>>> groups;
  for (const auto& m : marks) {
    auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) { return g.first == m.point; });
    if (it == groups.end()) {
      groups.push_back({m.point, {}});
      it = std::prev(groups.end());
    }
    if (!m.label.empty()) it->second.push_back(m.label);
  }
  std::vector<std::string> legend;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    std::string line = std::to_string(i + 1) + "  " + groups[i].first.str();
    for (std::size_t j = 0; j < groups[i].second.size(); ++j) line += (j ? ", " : ": ") + groups[i].second[j];
    legend.push_back(line);
  }
  double width = size;
  for (const auto& line : legend) width = std::max(width, 2 * kMargin + kCharWidth * static_cast<double>(line.size()));
  const double height = size + kLegendLine * static_cast<double>(groups.size()) + (groups.empty() ? 0 : kMargin);
  const auto px = [&](const Vec2& s) { return Vec2{kMargin + (s[0] + bound) * kScale, kMargin + (bound - s[1]) * kScale}; };
  const auto line = [&](const Vec2& a, double k, const std::string& style) -> std::string {
    const auto seg = clip(a, k, bound);
    if (!seg) return "";
    const auto p = px((*seg)[0]), q = px((*seg)[1]);
    return "  <line x1=\"" + fmt(p[0]) + "\" y1=\"" + fmt(p[1]) + "\" x2=\"" + fmt(q[0]) + "\" y2=\"" + fmt(q[1]) +
           "\" " + style + "/>\n";
  };

  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(width) + "\" height=\"" + fmt(height) +
                    "\" viewBox=\"0 0 " + fmt(width) + " " + fmt(height) + "\">\n";
  out += "  <rect x=\"0\" y=\"0\" width=\"" + fmt(width) + "\" height=\"" + fmt(height) + "\" fill=\"white\"/>\n";

  // Fundamental alcove: the simple walls alpha = 0 and the highest root wall alpha = 1.
  std::vector<std::pair<Vec2, double>> walls;
  for (int s : rd.simple_roots()) walls.push_back({frame.functional(rd.roots()[s]), 0.0});
  walls.push_back({frame.functional(rd.roots()[rd.highest_root()]), 1.0});
  std::string polygon;
  for (std::size_t i = 0; i < walls.size(); ++i) {
    const auto& [a, k] = walls[i];
    const auto& [c, l] = walls[(i + 1) % walls.size()];
    if (const auto v = intersect(a, k, c, l)) {
      const auto p = px(*v);
      polygon += (polygon.empty() ? "" : " ") + fmt(p[0]) + "," + fmt(p[1]);
    }
  }
  out += "  <polygon points=\"" + polygon + "\" fill=\"#dde8ff\" stroke=\"#2a4fd6\" stroke-width=\"2\"/>\n";

  // Affine root hyperplanes; positive roots suffice since -alpha = k is alpha = -k.
  const int reach = 2 * radius + 2;
  for (const auto& r : rd.roots()) {
    bool positive = false;
    for (int c : r.coeffs) {
      if (c != 0) {
        positive = c > 0;
        break;
      }
    }
    if (!positive) continue;
    const Vec2 a = frame.functional(r);
    for (int k = -reach; k <= reach; ++k)
      out += line(a, k, k == 0 ? "stroke=\"#555\" stroke-width=\"1\"" : "stroke=\"#aaa\" stroke-width=\"0.6\" stroke-dasharray=\"3,3\"");
  }

  for (const auto& h : highlight)
    for (const auto& c : h.constraints)
      out += line(frame.functional(c.root), -static_cast<double>(c.offset), "stroke=\"#d62a2a\" stroke-width=\"2\"");

  for (std::size_t i = 0; i < groups.size(); ++i) {
    const auto p = px(frame.project(groups[i].first));
    const std::string number = std::to_string(i + 1);
    out += "  <circle cx=\"" + fmt(p[0]) + "\" cy=\"" + fmt(p[1]) + "\" r=\"4\" fill=\"black\"/>\n";
    out += "  <text x=\"" + fmt(p[0] + 6) + "\" y=\"" + fmt(p[1] - 6) + "\" " + kFont + ">" + number + "</text>\n";
    out += "  <text x=\"" + fmt(kMargin) + "\" y=\"" + fmt(size + kMargin / 2 + kLegendLine * static_cast<double>(i)) + "\" " +
           kFont + ">" + escape(legend[i]) + "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace nilorb::cli

#pragma once

// Alcove geometry for the affine presets and SVG rendering of cell
// partitions.  Group elements act on the root lattice by integer matrices;
// the alcove picture lives on the level-1 slice of the dual space, which the
// contragredient action tiles by images of the fundamental alcove.  The
// slice is drawn through a fixed affine chart with rational vertex
// positions, so every polygon vertex is an exact rational point and shared
// walls match exactly.

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdio>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "klcells/coxeter.hpp"

namespace klcells {

/// Exact rational number with overflow-checked arithmetic.
struct Rat {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rat() = default;
  Rat(std::int64_t n, std::int64_t d = 1) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den == 0) throw std::invalid_argument("rational: zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  static std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("rational overflow");
    return r;
  }

  Rat operator+(const Rat& o) const {
    std::int64_t n1 = checked_mul(num, o.den), n2 = checked_mul(o.num, den);
    std::int64_t n;
    if (__builtin_add_overflow(n1, n2, &n)) throw std::overflow_error("rational overflow");
    return Rat(n, checked_mul(den, o.den));
  }
  Rat operator-() const { return Rat(-num, den); }
  Rat operator-(const Rat& o) const { return *this + (-o); }
  Rat operator*(const Rat& o) const {
    return Rat(checked_mul(num, o.num), checked_mul(den, o.den));
  }
  Rat operator/(const Rat& o) const {
    if (o.num == 0) throw std::invalid_argument("rational: division by zero");
    return Rat(checked_mul(num, o.den), checked_mul(den, o.num));
  }
  bool operator==(const Rat& o) const { return num == o.num && den == o.den; }
  bool operator!=(const Rat& o) const { return !(*this == o); }
  bool operator<(const Rat& o) const {
    return checked_mul(num, o.den) < checked_mul(o.num, den);
  }
  int sign() const { return num > 0 ? 1 : num < 0 ? -1 : 0; }
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
};

using RatPoint = std::array<Rat, 2>;

namespace detail {

/// Marks of the null root: the positive integer vector fixed by every
/// generator matrix (A * marks = 0 for the generalized Cartan matrix).
inline std::array<std::int64_t, 3> affine_marks(GroupKind kind) {
  switch (kind) {
    case GroupKind::AffineG2: return {3, 2, 1};
    case GroupKind::AffineB2: return {1, 2, 1};
    default: throw std::invalid_argument("alcove geometry: affine rank-3 preset required");
  }
}

/// Planar positions of the fundamental-alcove vertices in the drawing chart.
/// Vertex i is the alcove corner away from wall i.  The shapes approximate
/// the Euclidean alcoves (right angle at the right corner) while keeping all
/// coordinates rational.
inline std::array<RatPoint, 3> chart_vertices(GroupKind kind) {
  switch (kind) {
    case GroupKind::AffineG2:
      return {RatPoint{Rat(1), Rat(3, 5)}, RatPoint{Rat(1), Rat(0)},
              RatPoint{Rat(0), Rat(0)}};
    case GroupKind::AffineB2:
      return {RatPoint{Rat(0), Rat(0)}, RatPoint{Rat(1, 2), Rat(1, 2)},
              RatPoint{Rat(1), Rat(0)}};
    default: throw std::invalid_argument("alcove geometry: affine rank-3 preset required");
  }
}

}  // namespace detail

/// Vertices of g * (fundamental alcove) in the drawing plane: a segment
/// (2 points) for the A1-affine preset, a triangle for B2/G2-affine.
inline std::vector<RatPoint> alcove_polygon(const CoxeterGroup& group, const Element& g) {
  if (group.kind() == GroupKind::AffineA1) {
    // the line tiled by unit intervals: s1 reflects at 0, s2 at 1
    std::int64_t x0 = g.eps == 0 ? -2 * g.rot : 2 * g.rot - 1;
    return {RatPoint{Rat(x0), Rat(0)}, RatPoint{Rat(x0 + 1), Rat(0)}};
  }
  if (group.kind() != GroupKind::AffineB2 && group.kind() != GroupKind::AffineG2)
    throw std::invalid_argument("alcove_polygon: affine preset required");
  const auto marks = detail::affine_marks(group.kind());
  const auto chart = detail::chart_vertices(group.kind());
  const Mat3 inv = mat3_inv_unimodular(g.matrix);
  std::vector<RatPoint> out;
  for (int i = 0; i < 3; ++i) {
    // dual coordinates of g * (vertex i): row i of g^{-1}, divided by mark i
    Rat x(0), y(0), level(0);
    for (int j = 0; j < 3; ++j) {
      Rat w = Rat(marks[j] * inv[i][j], marks[i]);  // barycentric weight
      level = level + w;
      x = x + w * chart[j][0];
      y = y + w * chart[j][1];
    }
    if (level != Rat(1))
      throw std::logic_error("alcove_polygon: vertex left the level-1 slice");
    out.push_back({x, y});
  }
  return out;
}

// ---------------------------------------------------------------------------
// SVG rendering of a partition: one polygon per trusted-ball element, fill
// color by two-sided block (palette keyed by a-value rank), thick borders on
// walls separating distinct left cells.

struct RenderInput {
  int trusted_radius = 0;
  std::vector<int> two_sided_of;            // per ball id: block label
  std::vector<int> left_of;                 // per ball id: left-cell label
  std::map<int, std::int64_t> a_of_block;   // block label -> a-value
};

namespace detail {

inline const char* kPalette[] = {
    "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948",
    "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac", "#86bcb6", "#d37295",
    "#fabfd2", "#b6992d", "#499894", "#79706e"};

inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace detail

inline std::string render_svg(const CoxeterGroup& group, const Ball& ball,
                              const RenderInput& in) {
  // collect polygons of the trusted sub-ball (extruding A1~ segments)
  std::vector<int> ids;
  std::vector<std::vector<RatPoint>> polys;
  for (int id = 0; id < ball.size(); ++id) {
    if (ball.len[id] > in.trusted_radius) continue;
    auto p = alcove_polygon(group, ball.elements[id]);
    if (p.size() == 2)
      p = {p[0], p[1], RatPoint{p[1][0], Rat(1)}, RatPoint{p[0][0], Rat(1)}};
    ids.push_back(id);
    polys.push_back(std::move(p));
  }
  if (ids.empty()) throw std::invalid_argument("render_svg: empty trusted ball");

  // color ranks: blocks ordered by decreasing a-value, then label
  std::vector<std::pair<std::int64_t, int>> blocks;
  for (const auto& [label, a] : in.a_of_block) blocks.emplace_back(a, label);
  std::sort(blocks.begin(), blocks.end(), [](const auto& p, const auto& q) {
    return p.first != q.first ? p.first > q.first : p.second < q.second;
  });
  std::map<int, int> rank_of;
  for (const auto& [a, label] : blocks)
    rank_of.emplace(label, static_cast<int>(rank_of.size()));

  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& poly : polys)
    for (const auto& pt : poly) {
      xmin = std::min(xmin, pt[0].to_double());
      xmax = std::max(xmax, pt[0].to_double());
      ymin = std::min(ymin, pt[1].to_double());
      ymax = std::max(ymax, pt[1].to_double());
    }
  const double width = 800.0;
  const double scale = width / std::max(xmax - xmin, 1e-9);
  const double height = (ymax - ymin) * scale;
  auto px = [&](const Rat& x) { return (x.to_double() - xmin) * scale; };
  auto py = [&](const Rat& y) { return height - (y.to_double() - ymin) * scale; };

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + detail::fmt(width) +
         "\" height=\"" + detail::fmt(height) + "\" viewBox=\"0 0 " + detail::fmt(width) +
         " " + detail::fmt(height) + "\">\n";
  const int npal = static_cast<int>(sizeof detail::kPalette / sizeof *detail::kPalette);
  for (std::size_t k = 0; k < ids.size(); ++k) {
    const int id = ids[k];
    const int rank = rank_of.count(in.two_sided_of[id]) ? rank_of.at(in.two_sided_of[id]) : 0;
    svg += "  <polygon points=\"";
    for (std::size_t v = 0; v < polys[k].size(); ++v) {
      if (v) svg += " ";
      svg += detail::fmt(px(polys[k][v][0])) + "," + detail::fmt(py(polys[k][v][1]));
    }
    svg += "\" fill=\"";
    svg += detail::kPalette[rank % npal];
    svg += "\" stroke=\"#555555\" stroke-width=\"0.5\"/>\n";
  }

  // thick borders: walls between different left cells or out of the picture
  std::string borders;
  for (std::size_t k = 0; k < ids.size(); ++k) {
    const int id = ids[k];
    for (int s = 0; s < group.rank(); ++s) {
      const int nb = ball.rmul[id][s];
      const bool cut = nb < 0 || ball.len[nb] > in.trusted_radius ||
                       in.left_of[id] != in.left_of[nb];
      if (!cut) continue;
      // the shared wall: vertices of this alcove fixed by the neighbor swap
      std::vector<RatPoint> wall;
      if (nb >= 0) {
        auto other = alcove_polygon(group, ball.elements[nb]);
        if (other.size() == 2)
          other = {other[0], other[1], RatPoint{other[1][0], Rat(1)},
                   RatPoint{other[0][0], Rat(1)}};
        for (const auto& pt : polys[k])
          if (std::find(other.begin(), other.end(), pt) != other.end()) wall.push_back(pt);
      } else {
        // neighbor unknown: draw the wall opposite vertex s (rank-3 presets)
        if (polys[k].size() == 3)
          for (int v = 0; v < 3; ++v) {
            if (v != s) wall.push_back(polys[k][v]);
          }
      }
      if (wall.size() != 2) continue;
      borders += "  <line x1=\"" + detail::fmt(px(wall[0][0])) + "\" y1=\"" +
                 detail::fmt(py(wall[0][1])) + "\" x2=\"" + detail::fmt(px(wall[1][0])) +
                 "\" y2=\"" + detail::fmt(py(wall[1][1])) +
                 "\" stroke=\"#000000\" stroke-width=\"3\"/>\n";
    }
  }
  svg += borders;
  svg += "</svg>\n";
  return svg;
}

}  // namespace klcells

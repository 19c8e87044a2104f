#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "boxcover/geometry.hpp"

namespace boxcover {

/// Tangency configuration: one base point per axis, sitting on the facet
/// x_i = 0 with its partner base + e_i on the opposite facet. Only the base
/// points are stored; partners are derived, so the pairing cannot be broken.
struct TangencySet {
  int dim = 0;
  std::vector<Point> base_points;

  TangencySet() = default;
  TangencySet(int n, std::vector<Point> bases) : dim(n), base_points(std::move(bases)) {
    if (static_cast<int>(base_points.size()) != n)
      throw std::invalid_argument("TangencySet: need one base point per axis");
    for (const auto& p : base_points)
      if (p.dim() != n) throw std::invalid_argument("TangencySet: point dimension mismatch");
  }

  Point partner(int axis) const {
    Point p = base_points[static_cast<std::size_t>(axis)];
    p[axis] = Rational(1);
    return p;
  }

  /// All realized points, deduplicated and sorted.
  std::vector<Point> realized_points() const {
    std::vector<Point> pts;
    for (int i = 0; i < dim; ++i) {
      pts.push_back(base_points[static_cast<std::size_t>(i)]);
      pts.push_back(partner(i));
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
  }
};

inline bool validate_tangency_set(const TangencySet& t) {
  if (t.dim < 1 || static_cast<int>(t.base_points.size()) != t.dim) return false;
  for (int i = 0; i < t.dim; ++i) {
    const Point& p = t.base_points[static_cast<std::size_t>(i)];
    if (p.dim() != t.dim) return false;
    if (p[i] != Rational(0)) return false;
    if (!p.in_unit_cube()) return false;
  }
  return true;
}

/// Image of a tangency set: each pair {x_i, x_i + e_i} maps to the pair for
/// axis perm[i]; the new base point is the image that lands on the 0-facet.
inline TangencySet apply_symmetry(const CubeSymmetry& s, const TangencySet& t) {
  if (s.dim() != t.dim) throw std::invalid_argument("apply_symmetry: dimension mismatch");
  std::vector<Point> bases(static_cast<std::size_t>(t.dim));
  for (int i = 0; i < t.dim; ++i) {
    const int a = s.perm[static_cast<std::size_t>(i)];
    Point img = apply_symmetry(s, t.base_points[static_cast<std::size_t>(i)]);
    if (img[a] != Rational(0)) img = apply_symmetry(s, t.partner(i));
    bases[static_cast<std::size_t>(a)] = std::move(img);
  }
  return TangencySet(t.dim, std::move(bases));
}

enum class SegmentKind { Side, SemiCentral, Central };

inline std::string to_string(SegmentKind k) {
  switch (k) {
    case SegmentKind::Side: return "side";
    case SegmentKind::SemiCentral: return "semi-central";
    case SegmentKind::Central: return "central";
  }
  return "?";
}

/// Closed segment between two points of [0,1]^n that differ on exactly one
/// axis, running from 1/4 to 3/4 there. The kind is an orbit invariant under
/// cube symmetries, derived from the non-varying coordinates.
struct Segment {
  Point a;
  Point b;

  Segment() = default;
  Segment(Point p, Point q) : a(std::move(p)), b(std::move(q)) {
    if (b < a) std::swap(a, b);
  }

  int dim() const { return a.dim(); }

  int varying_axis() const {
    int axis = -1;
    for (int i = 0; i < a.dim(); ++i) {
      if (a[i] != b[i]) {
        if (axis >= 0) throw std::invalid_argument("Segment: varies on more than one axis");
        axis = i;
      }
    }
    if (axis < 0) throw std::invalid_argument("Segment: endpoints coincide");
    return axis;
  }

  bool shape_valid() const {
    int varying = 0;
    for (int i = 0; i < a.dim(); ++i) {
      if (a[i] == b[i]) continue;
      ++varying;
      const auto lo = boxcover::min(a[i], b[i]);
      const auto hi = boxcover::max(a[i], b[i]);
      if (lo != Rational(1, 4) || hi != Rational(3, 4)) return false;
    }
    return varying == 1 && a.in_unit_cube() && b.in_unit_cube();
  }

  /// The segment as a degenerate box.
  Box as_box() const {
    std::vector<Rational> lo(a.coords), hi(a.coords);
    for (int i = 0; i < a.dim(); ++i) {
      lo[static_cast<std::size_t>(i)] = boxcover::min(a[i], b[i]);
      hi[static_cast<std::size_t>(i)] = boxcover::max(a[i], b[i]);
    }
    return Box(std::move(lo), std::move(hi));
  }

  bool operator==(const Segment&) const = default;

  std::string str() const { return "[" + a.str() + "," + b.str() + "]"; }
};

inline Segment apply_symmetry(const CubeSymmetry& s, const Segment& seg) {
  return Segment(apply_symmetry(s, seg.a), apply_symmetry(s, seg.b));
}

/// Orbit classification: among the non-varying coordinates, a side segment
/// has them all in {0,1}; a semi-central one has a single 1/4-or-3/4; a
/// central one a single 1/2. Anything else is outside the three orbits.
inline std::optional<SegmentKind> classify_segment(const Segment& s) {
  if (!s.shape_valid()) return std::nullopt;
  const int varying = s.varying_axis();
  int quarters = 0, halves = 0, binaries = 0;
  for (int i = 0; i < s.dim(); ++i) {
    if (i == varying) continue;
    const Rational& c = s.a[i];
    if (c == Rational(0) || c == Rational(1))
      ++binaries;
    else if (c == Rational(1, 4) || c == Rational(3, 4))
      ++quarters;
    else if (c == Rational(1, 2))
      ++halves;
    else
      return std::nullopt;
  }
  const int others = s.dim() - 1;
  if (binaries == others) return SegmentKind::Side;
  if (quarters == 1 && binaries == others - 1) return SegmentKind::SemiCentral;
  if (halves == 1 && binaries == others - 1) return SegmentKind::Central;
  return std::nullopt;
}

/// A covering target: union of cube faces, segments and isolated points,
/// all inside [0,1]^n. Verified part by part, in the listed order.
struct Target {
  int dim = 0;
  std::vector<CubeFace> faces;
  std::vector<Segment> segments;
  std::vector<Point> points;

  Target() = default;
  explicit Target(int n) : dim(n) {}

  bool empty() const { return faces.empty() && segments.empty() && points.empty(); }

  Target& add_face(CubeFace f) {
    faces.push_back(std::move(f));
    return *this;
  }
  Target& add_segment(Segment s) {
    segments.push_back(std::move(s));
    return *this;
  }
  Target& add_point(Point p) {
    points.push_back(std::move(p));
    return *this;
  }
  Target& add_tangency_points(const TangencySet& t) {
    for (auto& p : t.realized_points()) points.push_back(std::move(p));
    return *this;
  }

  bool contains(const Point& p) const {
    for (const auto& f : faces)
      if (f.contains(p)) return true;
    for (const auto& s : segments)
      if (s.as_box().contains(p)) return true;
    for (const auto& q : points)
      if (q == p) return true;
    return false;
  }
};

/// The k-skeleton of [0,1]^n as a target: all k-faces in canonical order.
inline Target skeleton_target(int n, int k) {
  Target t(n);
  t.faces = enumerate_faces(n, k);
  return t;
}

}  // namespace boxcover

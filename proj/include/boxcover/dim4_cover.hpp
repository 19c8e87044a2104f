#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "boxcover/geometry.hpp"
#include "boxcover/skeleton.hpp"
#include "boxcover/transforms.hpp"
#include "boxcover/verifier.hpp"

namespace boxcover {

/// Per-face marking of the 2-faces of [0,1]^4: type A faces carry the axis
/// their special edges are parallel to, type B faces have only normal edges.
/// An edge is special in a face iff the face is type A and the edge runs
/// along its special direction; the assignment must make every edge special
/// in exactly one of its three containing faces.
struct FaceTyping {
  std::vector<CubeFace> faces;  // enumerate_faces(4, 2) order
  struct Entry {
    bool type_a = false;
    int special_dir = -1;  // axis index, type A only
  };
  std::vector<Entry> entries;

  FaceTyping() : faces(enumerate_faces(4, 2)), entries(faces.size()) {}

  std::size_t index_of(const CubeFace& f) const {
    const auto it = std::find(faces.begin(), faces.end(), f);
    if (it == faces.end()) throw std::invalid_argument("FaceTyping: unknown face");
    return static_cast<std::size_t>(it - faces.begin());
  }

  const Entry& at(const CubeFace& f) const { return entries[index_of(f)]; }

  static std::vector<CubeFace> faces_containing_edge(const CubeFace& edge) {
    std::vector<CubeFace> out;
    for (const auto& [axis, value] : edge.fixed) {
      std::map<int, int> fixed = edge.fixed;
      fixed.erase(axis);
      out.emplace_back(4, std::move(fixed));
    }
    return out;
  }

  /// The unique type-A face containing the edge whose special direction is
  /// the edge direction.
  CubeFace special_face_of_edge(const CubeFace& edge) const {
    const int dir = edge.free_axes().front();
    std::optional<CubeFace> found;
    for (const auto& f : faces_containing_edge(edge)) {
      const Entry& e = at(f);
      if (e.type_a && e.special_dir == dir) {
        if (found) throw std::logic_error("FaceTyping: edge special in two faces");
        found = f;
      }
    }
    if (!found) throw std::logic_error("FaceTyping: edge special in no face");
    return *found;
  }

  bool valid() const {
    int a = 0, b = 0;
    for (std::size_t i = 0; i < faces.size(); ++i) {
      if (entries[i].type_a) {
        ++a;
        const auto free = faces[i].free_axes();
        if (std::find(free.begin(), free.end(), entries[i].special_dir) == free.end())
          return false;
      } else {
        ++b;
      }
    }
    if (a != 16 || b != 8) return false;
    try {
      for (const auto& edge : enumerate_faces(4, 1)) special_face_of_edge(edge);
    } catch (const std::logic_error&) {
      return false;
    }
    return true;
  }
};

/// The specific assignment used by the four-dimensional cover. In the facets
/// x4 = 0 and x4 = 1 every face is type A, with special directions cycling
/// x1 -> x3, x2 -> x1, x3 -> x2; the four faces fixing (x2, x3) are type A
/// along x4; the eight faces fixing (x1, x2) or (x1, x3) are type B.
inline FaceTyping paper_face_typing() {
  FaceTyping t;
  for (std::size_t i = 0; i < t.faces.size(); ++i) {
    const CubeFace& f = t.faces[i];
    auto& e = t.entries[i];
    if (f.is_fixed(3)) {
      e.type_a = true;
      const int other = f.fixed.begin()->first;  // the non-x4 fixed axis
      e.special_dir = other == 0 ? 2 : (other == 1 ? 0 : 1);
    } else if (f.is_fixed(1) && f.is_fixed(2)) {
      e.type_a = true;
      e.special_dir = 3;
    } else {
      e.type_a = false;
    }
  }
  return t;
}

namespace detail4 {

inline std::pair<Rational, Rational> quarter(int v) {
  return v == 0 ? std::pair<Rational, Rational>{Rational(0), Rational(1, 4)}
                : std::pair<Rational, Rational>{Rational(3, 4), Rational(1)};
}

/// Edge cover box: [1/4,3/4] along the edge, degenerate on the free non-edge
/// axis of the edge's special face, quarter intervals on the other two axes.
/// Built this way, the box meets the special face in the edge alone.
inline Box edge_box(const CubeFace& edge, const FaceTyping& typing) {
  const int dir = edge.free_axes().front();
  const CubeFace special = typing.special_face_of_edge(edge);
  int deg_axis = -1;
  for (int a : special.free_axes())
    if (a != dir) deg_axis = a;

  Box b = Box::unit_cube(4);
  b.lo[static_cast<std::size_t>(dir)] = Rational(1, 4);
  b.hi[static_cast<std::size_t>(dir)] = Rational(3, 4);
  for (const auto& [axis, value] : edge.fixed) {
    const auto i = static_cast<std::size_t>(axis);
    if (axis == deg_axis) {
      b.lo[i] = Rational(value);
      b.hi[i] = Rational(value);
    } else {
      std::tie(b.lo[i], b.hi[i]) = quarter(value);
    }
  }
  return b;
}

inline Box vertex_box(const CubeFace& vertex) {
  Box b = Box::unit_cube(4);
  for (const auto& [axis, value] : vertex.fixed) {
    const auto i = static_cast<std::size_t>(axis);
    std::tie(b.lo[i], b.hi[i]) = quarter(value);
  }
  return b;
}

}  // namespace detail4

/// The 88-box tiling of the 2-skeleton of [0,1]^4, in the at-most-1 family:
/// 16 vertex cubes of side 1/4, 32 edge boxes, two half boxes per type-A face
/// and one central box per type-B face. No two boxes share interior points,
/// and within each 2-face the restrictions tile the face.
///
/// Box order: vertices, then edges, then per-face boxes, each section in
/// canonical face order; the half box nearer the low end of the split axis
/// comes first.
inline Cover cover88(const FaceTyping& typing = paper_face_typing()) {
  if (!typing.valid()) throw std::invalid_argument("cover88: invalid face typing");
  std::vector<Box> boxes;
  for (const auto& v : enumerate_faces(4, 0)) boxes.push_back(detail4::vertex_box(v));
  for (const auto& e : enumerate_faces(4, 1)) boxes.push_back(detail4::edge_box(e, typing));
  for (std::size_t i = 0; i < typing.faces.size(); ++i) {
    const CubeFace& f = typing.faces[i];
    Box base = f.as_box();
    if (typing.entries[i].type_a) {
      const int s = typing.entries[i].special_dir;
      int d = -1;
      for (int a : f.free_axes())
        if (a != s) d = a;
      const auto si = static_cast<std::size_t>(s);
      const auto di = static_cast<std::size_t>(d);
      base.lo[si] = Rational(1, 4);
      base.hi[si] = Rational(3, 4);
      Box lo_half = base, hi_half = base;
      lo_half.lo[di] = Rational(0);
      lo_half.hi[di] = Rational(1, 2);
      hi_half.lo[di] = Rational(1, 2);
      hi_half.hi[di] = Rational(1);
      boxes.push_back(std::move(lo_half));
      boxes.push_back(std::move(hi_half));
    } else {
      for (int a : f.free_axes()) {
        base.lo[static_cast<std::size_t>(a)] = Rational(1, 4);
        base.hi[static_cast<std::size_t>(a)] = Rational(3, 4);
      }
      boxes.push_back(std::move(base));
    }
  }
  return Cover(4, std::move(boxes), BoxClass::NonStrict);
}

/// Outcome of covering a tangency set together with a well-placed segment by
/// at most eight strict boxes.
struct A4CoverResult {
  Segment segment;                   // original frame
  std::vector<Box> boxes;            // original frame, all strict
  std::string case_tag;              // which branch of the analysis ran
  CubeSymmetry normalizing_symmetry; // original -> normalized frame
};

namespace detail4 {

inline Rational c14() { return Rational(1, 4); }
inline Rational c38() { return Rational(3, 8); }
inline Rational c12() { return Rational(1, 2); }
inline Rational c58() { return Rational(5, 8); }
inline Rational c34() { return Rational(3, 4); }

inline bool in_mid(const Rational& c) { return c14() <= c && c <= c34(); }

inline std::vector<Rational> nontrivial(const TangencySet& t, int i) {
  std::vector<Rational> out;
  for (int a = 0; a < 4; ++a)
    if (a != i) out.push_back(t.base_points[static_cast<std::size_t>(i)][a]);
  return out;
}

inline Box strip4(Rational l0, Rational h0, Rational l1, Rational h1, Rational l2, Rational h2,
                  Rational l3, Rational h3) {
  return Box({std::move(l0), std::move(l1), std::move(l2), std::move(l3)},
             {std::move(h0), std::move(h1), std::move(h2), std::move(h3)});
}

inline std::pair<Rational, Rational> J(const Rational& u) {
  return {boxcover::min(c12(), u), boxcover::max(c12(), u)};
}

inline Segment side_segment_norm() {
  return Segment(Point({c14(), Rational(0), Rational(0), Rational(0)}),
                 Point({c34(), Rational(0), Rational(0), Rational(0)}));
}
inline Segment semi_segment_norm() {
  return Segment(Point({c14(), c14(), Rational(0), Rational(0)}),
                 Point({c34(), c14(), Rational(0), Rational(0)}));
}
inline Segment central_segment_norm() {
  return Segment(Point({c14(), c12(), Rational(0), Rational(0)}),
                 Point({c34(), c12(), Rational(0), Rational(0)}));
}

}  // namespace detail4

/// The case analysis covering A4 together with a side, semi-central or
/// central segment by at most eight strict boxes.
///
/// The configuration is first moved by a cube symmetry into the canonical
/// frame of the applicable case (the lexicographically smallest symmetry
/// achieving it), the boxes are written down there, and everything is mapped
/// back. Cases, on the non-trivial coordinates of the base points:
///   (a) some point has all three outside [1/4,3/4];
///   (b) some point has exactly one inside;
///   (c) some point has exactly two inside;
///   (d) all inside for every point, some coordinate outside [3/8,5/8];
///   (e) all within [3/8,5/8], some coordinate strictly inside;
///   (f) every non-trivial coordinate is exactly 3/8 or 5/8.
inline A4CoverResult a4_cover(const TangencySet& t) {
  using namespace detail4;
  if (t.dim != 4 || !validate_tangency_set(t))
    throw std::invalid_argument("a4_cover: invalid 4-dimensional tangency set");

  // Case dispatch (symmetry-invariant).
  int n_all_out = 0, n_one_mid = 0, n_two_mid = 0;
  bool any_quarter_band = false, any_strict_inner = false;
  for (int i = 0; i < 4; ++i) {
    int mid = 0;
    for (const auto& c : nontrivial(t, i)) {
      if (in_mid(c)) ++mid;
      if (in_mid(c) && (c < c38() || c > c58())) any_quarter_band = true;
      if (c38() < c && c < c58()) any_strict_inner = true;
    }
    if (mid == 0) ++n_all_out;
    if (mid == 1) ++n_one_mid;
    if (mid == 2) ++n_two_mid;
  }
  std::string tag;
  if (n_all_out > 0)
    tag = "a";
  else if (n_one_mid > 0)
    tag = "b";
  else if (n_two_mid > 0)
    tag = "c";
  else if (any_quarter_band)
    tag = "d";
  else if (any_strict_inner)
    tag = "e";
  else
    tag = "f";

  // Normalized-frame predicate for the chosen case.
  const auto predicate = [&](const TangencySet& s) -> bool {
    const Point& x4 = s.base_points[3];
    const Rational &q = x4[0], &sv = x4[1], &tv = x4[2];
    if (tag == "a") return q < c14() && q >= sv && sv >= tv;
    if (tag == "b") return c14() <= q && q <= c34() && sv < c14() && sv >= tv;
    if (tag == "c")
      return c14() <= sv && q <= c12() && q >= sv && tv < c14() && c14() <= q;
    if (tag == "d")
      return c14() <= tv && q <= c12() && q >= sv && sv >= tv && tv < c38();
    const Point& x3 = s.base_points[2];
    if (tag == "e")
      return c38() < q && q <= c12() && tv <= c12() && x3[3] <= c12();
    // tag == "f"
    return tv == c38() && x3[3] == c38() && x3[0] <= q;
  };

  static const std::vector<CubeSymmetry> symmetries = all_symmetries(4);
  std::optional<CubeSymmetry> chosen;
  TangencySet norm;
  for (const auto& s : symmetries) {
    TangencySet cand = apply_symmetry(s, t);
    if (predicate(cand)) {
      chosen = s;
      norm = std::move(cand);
      break;
    }
  }
  if (!chosen) throw ConstructionError("a4_cover: no normalizing symmetry for case " + tag);

  const Point& x4 = norm.base_points[3];
  const Rational &q = x4[0], &sv = x4[1], &tv = x4[2];
  std::vector<Box> boxes;
  Segment seg = side_segment_norm();
  std::vector<Point> covered_bases;

  if (tag == "a") {
    boxes.push_back(strip4(q, c34(), Rational(0), sv, Rational(0), tv, Rational(0), Rational(0)));
    covered_bases = {x4};
  } else if (tag == "b") {
    boxes.push_back(
        strip4(c14(), c34(), Rational(0), sv, Rational(0), tv, Rational(0), Rational(0)));
    covered_bases = {x4};
  } else if (tag == "c") {
    boxes.push_back(strip4(c14(), c34(), sv, c12(), Rational(0), tv, Rational(0), Rational(0)));
    seg = central_segment_norm();
    covered_bases = {x4};
  } else if (tag == "d") {
    if (sv < c38()) {
      boxes.push_back(strip4(c14(), c34(), c14(), sv, Rational(0), tv, Rational(0), Rational(0)));
      seg = semi_segment_norm();
      tag = "d-semi";
    } else {
      boxes.push_back(strip4(c14(), c34(), sv, c12(), Rational(0), tv, Rational(0), Rational(0)));
      seg = central_segment_norm();
      tag = "d-central";
    }
    covered_bases = {x4};
  } else if (tag == "e") {
    const Point& x3 = norm.base_points[2];
    const Rational &qp = x3[0], &sp = x3[1], &tp = x3[3];
    const auto [jslo, jshi] = J(sv);
    const auto [jplo, jphi] = J(sp);
    if (qp <= c12()) {
      boxes.push_back(strip4(q, c34(), jslo, jshi, Rational(0), tv, Rational(0), Rational(0)));
      boxes.push_back(strip4(c14(), c12(), jplo, jphi, Rational(0), Rational(0), Rational(0), tp));
    } else {
      boxes.push_back(strip4(c14(), c12(), jslo, jshi, Rational(0), tv, Rational(0), Rational(0)));
      boxes.push_back(strip4(c12(), c34(), jplo, jphi, Rational(0), Rational(0), Rational(0), tp));
    }
    seg = central_segment_norm();
    covered_bases = {x4, x3};
  } else {  // "f"
    const Point& x3 = norm.base_points[2];
    const Rational &qp = x3[0], &sp = x3[1];
    const auto [jslo, jshi] = J(sv);
    const auto [jplo, jphi] = J(sp);
    boxes.push_back(strip4(qp, c34(), jplo, jphi, Rational(0), Rational(0), Rational(0), c38()));
    boxes.push_back(strip4(c14(), q, jslo, jshi, Rational(0), c38(), Rational(0), Rational(0)));
    seg = central_segment_norm();
    covered_bases = {x3, x4};
  }

  // Point boxes for the realized points not handled by the segment boxes.
  for (const auto& p : norm.realized_points()) {
    if (std::find(covered_bases.begin(), covered_bases.end(), p) != covered_bases.end()) continue;
    boxes.push_back(Box::point(p));
  }

  for (const auto& b : boxes)
    if (!box_in_class(b, BoxClass::Strict))
      throw ConstructionError("a4_cover: produced a non-strict box in case " + tag);
  if (boxes.size() > 8) throw ConstructionError("a4_cover: more than eight boxes");
  {
    Target check(4);
    check.add_segment(seg);
    for (const auto& p : norm.realized_points()) check.add_point(p);
    if (!covers_target(Cover(4, boxes, BoxClass::Strict), check).covered)
      throw ConstructionError("a4_cover: self-check failed in case " + tag);
  }

  const CubeSymmetry inv = chosen->inverse();
  A4CoverResult res;
  res.case_tag = tag;
  res.normalizing_symmetry = *chosen;
  res.segment = apply_symmetry(inv, seg);
  for (const auto& b : boxes) res.boxes.push_back(apply_symmetry(inv, b));
  return res;
}

/// Result of the full four-dimensional assembly.
struct Assemble96Result {
  Cover cover;               // 96 strict boxes, original frame
  std::string case_tag;
  Rational epsilon;          // accepted base epsilon of the shrinking cascade
  CubeSymmetry work_symmetry;  // original -> working frame
  Segment segment;           // original frame
  TangencySet tangency;      // original input
};

namespace detail4 {

/// Working state of the 96-box assembly in the canonical segment frame.
struct Assembly {
  FaceTyping typing;
  std::vector<CubeFace> vertices = enumerate_faces(4, 0);
  std::vector<CubeFace> edges = enumerate_faces(4, 1);
  std::vector<Box> boxes;          // [0,16) vertices, [16,48) edges, [48,88) faces, [88,96) a4
  std::vector<bool> strict;
  std::vector<bool> edge_modified;
  std::vector<std::size_t> face_box_start;  // per canonical face index
  Rational eps_cur;

  explicit Assembly(const FaceTyping& ty) : typing(ty) {}

  std::size_t edge_index(const CubeFace& e) const {
    const auto it = std::find(edges.begin(), edges.end(), e);
    if (it == edges.end()) throw std::logic_error("Assembly: unknown edge");
    return static_cast<std::size_t>(it - edges.begin());
  }

  Rational take_eps() {
    Rational e = eps_cur;
    eps_cur = eps_cur / Rational(8);
    return e;
  }

  std::vector<const Box*> strict_boxes() const {
    std::vector<const Box*> out;
    for (std::size_t i = 0; i < boxes.size(); ++i)
      if (strict[i]) out.push_back(&boxes[i]);
    return out;
  }

  Rational expand_strict_near(const Box& around) {
    std::optional<Rational> margin;
    for (std::size_t i = 0; i < boxes.size(); ++i) {
      if (!strict[i] || !boxes[i].intersects(around)) continue;
      const Rational m = expand_margin(boxes[i]);
      boxes[i] = expand_eps(boxes[i]);
      margin = margin ? boxcover::min(*margin, m) : m;
    }
    if (!margin) throw ConstructionError("assemble96: nothing to expand near the segment");
    return *margin;
  }

  void modify_edge(const CubeFace& edge, const CubeFace& face) {
    const std::size_t ei = edge_index(edge);
    if (edge_modified[ei]) return;
    const int dir = edge.free_axes().front();
    const CubeFace special = typing.special_face_of_edge(edge);
    int deg_axis = -1;
    for (int a : special.free_axes())
      if (a != dir) deg_axis = a;
    // Quarter axis lying in the face being added, and the remaining one.
    int in_face_axis = -1, other_axis = -1;
    for (const auto& [axis, value] : edge.fixed) {
      if (axis == deg_axis) continue;
      if (!face.is_fixed(axis))
        in_face_axis = axis;
      else
        other_axis = axis;
    }
    if (in_face_axis < 0 || other_axis < 0)
      throw std::logic_error("assemble96: edge/face mismatch in edge rule");

    const Rational e = take_eps();
    Box& b = boxes[16 + ei];
    const auto set = [&b](int axis, Rational lo, Rational hi) {
      b.lo[static_cast<std::size_t>(axis)] = std::move(lo);
      b.hi[static_cast<std::size_t>(axis)] = std::move(hi);
    };
    const int vg = edge.fixed.at(in_face_axis);
    const int vw = edge.fixed.at(deg_axis);
    const int vo = edge.fixed.at(other_axis);
    if (vg == 0)
      set(in_face_axis, Rational(0), Rational(1, 4) - Rational(3) * e);
    else
      set(in_face_axis, Rational(3, 4) + Rational(3) * e, Rational(1));
    if (vw == 0)
      set(deg_axis, Rational(0), e);
    else
      set(deg_axis, Rational(1) - e, Rational(1));
    if (vo == 0)
      set(other_axis, Rational(0), Rational(1, 4) + e);
    else
      set(other_axis, Rational(3, 4) - e, Rational(1));
    strict[16 + ei] = box_in_class(b, BoxClass::Strict);
    edge_modified[ei] = true;
  }

  bool cross_covered(const CubeFace& face) const {
    const auto strict_ptrs = strict_boxes();
    for (int f : face.free_axes()) {
      Box region = face.as_box();
      region.lo[static_cast<std::size_t>(f)] = Rational(1, 4);
      region.hi[static_cast<std::size_t>(f)] = Rational(3, 4);
      if (!boxcover::detail::covers_region(strict_ptrs, region).covered) return false;
    }
    return true;
  }
};

}  // namespace detail4

/// Assembles exactly 96 strict boxes covering the 2-skeleton of [0,1]^4
/// together with the given tangency set.
///
/// Pipeline: run the segment case analysis, move everything into the frame
/// where the segment sits at its canonical position, start from the 88-box
/// tiling plus the (padded) eight segment boxes, widen around the segment,
/// then walk the faces in a fixed order, replacing each face's boxes and the
/// boxes of its not-yet-modified normal edges by their slightly-smaller
/// strict variants; finish by widening everything and shrinking the vertex
/// cubes. Epsilons follow a strictly decreasing cascade (factor 8 per
/// modification), so every replacement's margin is dominated by the margins
/// left by earlier steps; every face step is re-verified exactly and the
/// whole pipeline retries with a smaller base epsilon on failure.
inline Assemble96Result assemble96(const TangencySet& t, const EpsilonSchedule& sched = {}) {
  using namespace detail4;
  sched.validate();
  const FaceTyping typing = paper_face_typing();
  A4CoverResult a4 = a4_cover(t);

  // Compose the case normalization with the move to the canonical segment
  // position used by the face walk.
  const SegmentKind kind = *classify_segment(a4.segment);
  CubeSymmetry kind_sym = CubeSymmetry::identity(4);
  if (kind == SegmentKind::SemiCentral)
    kind_sym = CubeSymmetry({2, 3, 0, 1}, {false, false, false, false});
  else if (kind == SegmentKind::Central)
    kind_sym = CubeSymmetry({0, 2, 1, 3}, {false, false, false, false});
  const CubeSymmetry work_sym = a4.normalizing_symmetry.then(kind_sym);

  std::vector<Box> a4_boxes_work;
  for (const auto& b : a4.boxes) a4_boxes_work.push_back(apply_symmetry(work_sym, b));
  while (a4_boxes_work.size() < 8) a4_boxes_work.push_back(a4_boxes_work.back());
  const Segment seg_work = apply_symmetry(work_sym, a4.segment);
  const TangencySet t_work = apply_symmetry(work_sym, t);

  // Face walk order. For a side or central segment the walk starts at the
  // face containing the segment; the semi-central start needs three steps to
  // reach it. Faces are (fixed-axis pair -> values), 0-based.
  const auto face_of = [](int a1, int v1, int a2, int v2) {
    return CubeFace(4, {{a1, v1}, {a2, v2}});
  };
  std::vector<CubeFace> order;
  {
    std::vector<CubeFace> facet0 = {face_of(1, 0, 3, 0), face_of(0, 0, 3, 0),
                                    face_of(0, 1, 3, 0), face_of(2, 0, 3, 0),
                                    face_of(2, 1, 3, 0), face_of(1, 1, 3, 0)};
    std::vector<CubeFace> facet1 = {face_of(1, 0, 3, 1), face_of(0, 0, 3, 1),
                                    face_of(0, 1, 3, 1), face_of(2, 0, 3, 1),
                                    face_of(2, 1, 3, 1), face_of(1, 1, 3, 1)};
    std::vector<CubeFace> middle;
    for (const auto& f : enumerate_faces(4, 2))
      if (!f.is_fixed(3)) middle.push_back(f);

    if (kind == SegmentKind::SemiCentral) {
      order = {face_of(0, 0, 1, 0), face_of(0, 0, 3, 0), face_of(2, 0, 3, 0),
               face_of(1, 0, 3, 0), face_of(0, 1, 3, 0), face_of(2, 1, 3, 0),
               face_of(1, 1, 3, 0)};
      for (const auto& f : middle)
        if (!(f == face_of(0, 0, 1, 0))) order.push_back(f);
      for (const auto& f : facet1) order.push_back(f);
    } else {
      order = facet0;
      for (const auto& f : middle) order.push_back(f);
      for (const auto& f : facet1) order.push_back(f);
    }
  }

  const Cover base88 = cover88(typing);
  Rational eps0_cap = sched.initial;

  for (int attempt = 0;; ++attempt) {
    Assembly w(typing);
    w.boxes = base88.boxes;
    for (const auto& b : a4_boxes_work) w.boxes.push_back(b);
    w.strict.assign(96, false);
    for (std::size_t i = 88; i < 96; ++i) w.strict[i] = true;
    w.edge_modified.assign(32, false);
    w.face_box_start.assign(24, 0);
    {
      std::size_t at = 48;
      for (std::size_t i = 0; i < 24; ++i) {
        w.face_box_start[i] = at;
        at += typing.entries[i].type_a ? 2 : 1;
      }
    }

    bool ok = true;
    try {
      // Seed: widen the strict boxes around the segment, then fix the base
      // epsilon small enough for the first face's trims to stay inside the
      // widened slab.
      const Rational margin = w.expand_strict_near(seg_work.as_box());
      w.eps_cur = Rational::pow2_floor(
          boxcover::min(margin / Rational(6), eps0_cap));
      const Rational eps0 = w.eps_cur;

      for (std::size_t step = 0; step < order.size() && ok; ++step) {
        const CubeFace& face = order[step];
        const std::size_t fi = typing.index_of(face);
        const auto& entry = typing.entries[fi];
        const Rational e = w.take_eps();

        if (entry.type_a) {
          const int s_ax = entry.special_dir;
          int d_ax = -1;
          for (int a : face.free_axes())
            if (a != s_ax) d_ax = a;

          // Choose the seeding situation: the segment itself on the first
          // step, otherwise a special edge whose box is already modified.
          bool central_seed = false;
          int side = -1;
          if (step == 0 && kind == SegmentKind::Central)
            central_seed = true;
          else if (step == 0 && kind == SegmentKind::Side)
            side = 0;  // canonical side segment lies in the low special edge
          else {
            for (int v : {0, 1}) {
              std::map<int, int> ef = face.fixed;
              ef[d_ax] = v;
              if (w.edge_modified[w.edge_index(CubeFace(4, ef))]) {
                side = v;
                break;
              }
            }
          }
          if (!central_seed && side < 0)
            throw ConstructionError("assemble96: face " + face.str() + " has no seed");

          Box& lo_half = w.boxes[w.face_box_start[fi]];
          Box& hi_half = w.boxes[w.face_box_start[fi] + 1];
          const auto si = static_cast<std::size_t>(s_ax);
          const auto di = static_cast<std::size_t>(d_ax);
          for (Box* b : {&lo_half, &hi_half}) {
            b->lo[si] = Rational(1, 4) - e;
            b->hi[si] = Rational(3, 4) + e;
          }
          const Rational half = Rational(1, 2);
          if (central_seed) {
            lo_half.lo[di] = Rational(0);
            lo_half.hi[di] = half - Rational(3) * e;
            hi_half.lo[di] = half + Rational(3) * e;
            hi_half.hi[di] = Rational(1);
          } else if (side == 0) {
            lo_half.lo[di] = Rational(6) * e;
            lo_half.hi[di] = half + Rational(3) * e;
            hi_half.lo[di] = half + Rational(3) * e;
            hi_half.hi[di] = Rational(1);
          } else {
            hi_half.lo[di] = half - Rational(3) * e;
            hi_half.hi[di] = Rational(1) - Rational(6) * e;
            lo_half.lo[di] = Rational(0);
            lo_half.hi[di] = half - Rational(3) * e;
          }
          w.strict[w.face_box_start[fi]] = true;
          w.strict[w.face_box_start[fi] + 1] = true;

          for (int v : {0, 1}) {
            std::map<int, int> ef = face.fixed;
            ef[s_ax] = v;
            w.modify_edge(CubeFace(4, ef), face);
          }
        } else {
          // Type B: trim the central box away from the covered side.
          int trim_axis = -1, trim_side = -1, along_axis = -1;
          if (step == 0 && kind == SegmentKind::SemiCentral) {
            along_axis = seg_work.varying_axis();
            for (int a : face.free_axes())
              if (a != along_axis) trim_axis = a;
            trim_side = seg_work.a[trim_axis] <= Rational(1, 2) ? 0 : 1;
          } else {
            for (const auto& edge : enumerate_faces(4, 1)) {
              bool in_face = true;
              for (const auto& [axis, value] : face.fixed)
                if (!edge.is_fixed(axis) || edge.fixed.at(axis) != value) in_face = false;
              if (!in_face || !w.edge_modified[w.edge_index(edge)]) continue;
              const int d_e = edge.free_axes().front();
              for (int a : face.free_axes())
                if (a != d_e) trim_axis = a;
              along_axis = d_e;
              trim_side = edge.fixed.at(trim_axis);
              break;
            }
            if (trim_axis < 0)
              throw ConstructionError("assemble96: face " + face.str() + " has no seed");
          }

          Box& central = w.boxes[w.face_box_start[fi]];
          const auto ti = static_cast<std::size_t>(trim_axis);
          const auto ai = static_cast<std::size_t>(along_axis);
          central.lo[ai] = Rational(1, 4) - e;
          central.hi[ai] = Rational(3, 4) + e;
          if (trim_side == 0) {
            central.lo[ti] = Rational(1, 4) + Rational(4) * e;
            central.hi[ti] = Rational(3, 4) + e;
          } else {
            central.lo[ti] = Rational(1, 4) - e;
            central.hi[ti] = Rational(3, 4) - Rational(4) * e;
          }
          w.strict[w.face_box_start[fi]] = true;

          for (const auto& edge : enumerate_faces(4, 1)) {
            bool in_face = true;
            for (const auto& [axis, value] : face.fixed)
              if (!edge.is_fixed(axis) || edge.fixed.at(axis) != value) in_face = false;
            if (in_face) w.modify_edge(edge, face);
          }
        }

        if (!w.cross_covered(face)) ok = false;
      }

      if (ok) {
        // Closing moves: widen every strict box, then shrink the vertex
        // cubes to side 1/4 - eps inside the widened slack.
        std::optional<Rational> final_margin;
        for (std::size_t i = 0; i < 96; ++i) {
          if (!w.strict[i]) continue;
          const Rational m = expand_margin(w.boxes[i]);
          w.boxes[i] = expand_eps(w.boxes[i]);
          final_margin = final_margin ? boxcover::min(*final_margin, m) : m;
        }
        const Rational ev =
            Rational::pow2_floor(boxcover::min(*final_margin, w.eps_cur));
        for (std::size_t vi = 0; vi < 16; ++vi) {
          Box& b = w.boxes[vi];
          for (const auto& [axis, value] : w.vertices[vi].fixed) {
            const auto i = static_cast<std::size_t>(axis);
            if (value == 0) {
              b.lo[i] = Rational(0);
              b.hi[i] = Rational(1, 4) - ev;
            } else {
              b.lo[i] = Rational(3, 4) + ev;
              b.hi[i] = Rational(1);
            }
          }
          w.strict[vi] = true;
        }

        Cover work_cover(4, w.boxes, BoxClass::Strict);
        Target target = skeleton_target(4, 2);
        target.add_tangency_points(t_work);
        if (!verify_class(work_cover) || !covers_target(work_cover, target).covered) ok = false;

        if (ok) {
          const CubeSymmetry inv = work_sym.inverse();
          std::vector<Box> out;
          out.reserve(96);
          for (const auto& b : w.boxes) out.push_back(apply_symmetry(inv, b));
          Assemble96Result res{Cover(4, std::move(out), BoxClass::Strict),
                               a4.case_tag,
                               eps0,
                               work_sym,
                               a4.segment,
                               t};
          return res;
        }
      }
    } catch (const ConstructionError&) {
      if (attempt >= sched.max_retries) throw;
      ok = false;
    }
    if (attempt >= sched.max_retries)
      throw ConstructionError("assemble96: schedule exhausted after " +
                              std::to_string(attempt + 1) + " attempts");
    eps0_cap = eps0_cap * sched.shrink_factor;
  }
}

}  // namespace boxcover

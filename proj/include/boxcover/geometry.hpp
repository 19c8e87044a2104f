#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "boxcover/rational.hpp"

namespace boxcover {

/// A point of E^n with exact rational coordinates. Axes are 0-based.
struct Point {
  std::vector<Rational> coords;

  Point() = default;
  explicit Point(std::vector<Rational> c) : coords(std::move(c)) {}
  Point(std::initializer_list<Rational> c) : coords(c) {}

  int dim() const { return static_cast<int>(coords.size()); }
  const Rational& operator[](int axis) const { return coords[static_cast<std::size_t>(axis)]; }
  Rational& operator[](int axis) { return coords[static_cast<std::size_t>(axis)]; }

  bool operator==(const Point&) const = default;

  /// Lexicographic order on coordinates.
  bool operator<(const Point& o) const {
    return std::lexicographical_compare(coords.begin(), coords.end(), o.coords.begin(),
                                        o.coords.end());
  }

  bool in_unit_cube() const {
    for (const auto& c : coords)
      if (c < Rational(0) || c > Rational(1)) return false;
    return true;
  }

  std::string str() const {
    std::string s = "(";
    for (int i = 0; i < dim(); ++i) {
      if (i) s += ",";
      s += coords[static_cast<std::size_t>(i)].str();
    }
    return s + ")";
  }
};

/// Axis-aligned closed box, possibly degenerate along some axes.
struct Box {
  std::vector<Rational> lo;
  std::vector<Rational> hi;

  Box() = default;
  Box(std::vector<Rational> l, std::vector<Rational> h) : lo(std::move(l)), hi(std::move(h)) {
    if (lo.size() != hi.size()) throw std::invalid_argument("Box: lo/hi size mismatch");
    for (std::size_t i = 0; i < lo.size(); ++i)
      if (hi[i] < lo[i]) throw std::invalid_argument("Box: hi < lo on axis " + std::to_string(i));
  }

  /// Degenerate box holding a single point.
  static Box point(const Point& p) { return Box(p.coords, p.coords); }

  /// The cube [0,1]^n.
  static Box unit_cube(int n) {
    return Box(std::vector<Rational>(static_cast<std::size_t>(n), Rational(0)),
               std::vector<Rational>(static_cast<std::size_t>(n), Rational(1)));
  }

  int dim() const { return static_cast<int>(lo.size()); }

  Rational side(int axis) const {
    return hi[static_cast<std::size_t>(axis)] - lo[static_cast<std::size_t>(axis)];
  }

  /// Sum of all side lengths; the quantity bounded by 1 in the box families.
  Rational side_sum() const {
    Rational s(0);
    for (int i = 0; i < dim(); ++i) s += side(i);
    return s;
  }

  bool contains(const Point& p) const {
    if (p.dim() != dim()) throw std::invalid_argument("Box::contains: dimension mismatch");
    for (std::size_t i = 0; i < lo.size(); ++i)
      if (p.coords[i] < lo[i] || hi[i] < p.coords[i]) return false;
    return true;
  }

  bool contains_box(const Box& o) const {
    if (o.dim() != dim()) throw std::invalid_argument("Box::contains_box: dimension mismatch");
    for (std::size_t i = 0; i < lo.size(); ++i)
      if (o.lo[i] < lo[i] || hi[i] < o.hi[i]) return false;
    return true;
  }

  bool intersects(const Box& o) const {
    if (o.dim() != dim()) throw std::invalid_argument("Box::intersects: dimension mismatch");
    for (std::size_t i = 0; i < lo.size(); ++i)
      if (o.hi[i] < lo[i] || hi[i] < o.lo[i]) return false;
    return true;
  }

  /// Full-dimensional interiors overlap iff the overlap is positive on every axis.
  bool interior_overlaps(const Box& o) const {
    for (std::size_t i = 0; i < lo.size(); ++i) {
      const Rational l = boxcover::max(lo[i], o.lo[i]);
      const Rational h = boxcover::min(hi[i], o.hi[i]);
      if (!(l < h)) return false;
    }
    return true;
  }

  bool operator==(const Box&) const = default;

  std::string str() const {
    std::string s;
    for (int i = 0; i < dim(); ++i) {
      if (i) s += "x";
      const auto a = static_cast<std::size_t>(i);
      if (lo[a] == hi[a])
        s += "{" + lo[a].str() + "}";
      else
        s += "[" + lo[a].str() + "," + hi[a].str() + "]";
    }
    return s;
  }
};

/// Box family: Strict is side-sum < 1, NonStrict is side-sum <= 1.
enum class BoxClass { Strict, NonStrict };

inline Rational box_class_sum(const Box& b) { return b.side_sum(); }

inline bool box_in_class(const Box& b, BoxClass c) {
  const Rational s = b.side_sum();
  return c == BoxClass::Strict ? s < Rational(1) : s <= Rational(1);
}

inline bool box_contains_point(const Box& b, const Point& p) { return b.contains(p); }

inline std::string to_string(BoxClass c) {
  return c == BoxClass::Strict ? "strict" : "nonstrict";
}

/// A face of [0,1]^n given by the axes pinned to 0 or 1. The face dimension
/// is n minus the number of pinned axes.
struct CubeFace {
  int dim_ambient = 0;
  std::map<int, int> fixed;  // axis -> value in {0,1}; keys sorted

  CubeFace() = default;
  CubeFace(int n, std::map<int, int> f) : dim_ambient(n), fixed(std::move(f)) {
    for (const auto& [axis, value] : fixed) {
      if (axis < 0 || axis >= n) throw std::invalid_argument("CubeFace: axis out of range");
      if (value != 0 && value != 1) throw std::invalid_argument("CubeFace: value must be 0 or 1");
    }
  }

  int dim() const { return dim_ambient - static_cast<int>(fixed.size()); }

  bool is_fixed(int axis) const { return fixed.count(axis) != 0; }

  std::vector<int> free_axes() const {
    std::vector<int> axes;
    for (int a = 0; a < dim_ambient; ++a)
      if (!is_fixed(a)) axes.push_back(a);
    return axes;
  }

  /// The face as a (degenerate) box in the ambient space.
  Box as_box() const {
    Box b = Box::unit_cube(dim_ambient);
    for (const auto& [axis, value] : fixed) {
      b.lo[static_cast<std::size_t>(axis)] = Rational(value);
      b.hi[static_cast<std::size_t>(axis)] = Rational(value);
    }
    return b;
  }

  bool contains(const Point& p) const {
    if (p.dim() != dim_ambient) throw std::invalid_argument("CubeFace: dimension mismatch");
    if (!p.in_unit_cube()) return false;
    for (const auto& [axis, value] : fixed)
      if (p[axis] != Rational(value)) return false;
    return true;
  }

  bool operator==(const CubeFace&) const = default;
  auto operator<=>(const CubeFace&) const = default;

  std::string str() const {
    std::string s = "face{";
    bool first = true;
    for (const auto& [axis, value] : fixed) {
      if (!first) s += ",";
      s += "x" + std::to_string(axis + 1) + "=" + std::to_string(value);
      first = false;
    }
    return s + "}";
  }
};

/// All k-dimensional faces of [0,1]^n in canonical order: fixed-axis sets in
/// lexicographic order, then fixed values in binary counting order (first
/// fixed axis most significant). The order is frozen; certificates depend on it.
inline std::vector<CubeFace> enumerate_faces(int n, int k) {
  if (k < 0 || k > n) throw std::invalid_argument("enumerate_faces: need 0 <= k <= n");
  const int m = n - k;  // number of fixed axes
  std::vector<CubeFace> faces;

  std::vector<int> axes(static_cast<std::size_t>(m));
  std::iota(axes.begin(), axes.end(), 0);
  const auto emit_values = [&](const std::vector<int>& fixed_axes) {
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
      std::map<int, int> fixed;
      for (int i = 0; i < m; ++i) {
        const int bit = (mask >> (m - 1 - i)) & 1u;
        fixed[fixed_axes[static_cast<std::size_t>(i)]] = bit;
      }
      faces.emplace_back(n, std::move(fixed));
    }
  };

  if (m == 0) {
    faces.emplace_back(n, std::map<int, int>{});
    return faces;
  }
  // Lexicographic enumeration of m-subsets of {0..n-1}.
  while (true) {
    emit_values(axes);
    int i = m - 1;
    while (i >= 0 && axes[static_cast<std::size_t>(i)] == n - m + i) --i;
    if (i < 0) break;
    ++axes[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < m; ++j)
      axes[static_cast<std::size_t>(j)] = axes[static_cast<std::size_t>(j - 1)] + 1;
  }
  return faces;
}

/// Symmetry of [0,1]^n: a signed coordinate permutation. Axis i maps to
/// perm[i]; when flip[i] is set the coordinate maps through x -> 1 - x.
struct CubeSymmetry {
  std::vector<int> perm;
  std::vector<bool> flip;

  CubeSymmetry() = default;
  CubeSymmetry(std::vector<int> p, std::vector<bool> f) : perm(std::move(p)), flip(std::move(f)) {
    if (perm.size() != flip.size()) throw std::invalid_argument("CubeSymmetry: size mismatch");
    std::vector<bool> seen(perm.size(), false);
    for (int v : perm) {
      if (v < 0 || v >= static_cast<int>(perm.size()) || seen[static_cast<std::size_t>(v)])
        throw std::invalid_argument("CubeSymmetry: not a permutation");
      seen[static_cast<std::size_t>(v)] = true;
    }
  }

  static CubeSymmetry identity(int n) {
    std::vector<int> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    return CubeSymmetry(std::move(p), std::vector<bool>(static_cast<std::size_t>(n), false));
  }

  int dim() const { return static_cast<int>(perm.size()); }

  CubeSymmetry inverse() const {
    const auto n = perm.size();
    std::vector<int> p(n);
    std::vector<bool> f(n);
    for (std::size_t i = 0; i < n; ++i) {
      p[static_cast<std::size_t>(perm[i])] = static_cast<int>(i);
      f[static_cast<std::size_t>(perm[i])] = flip[i];
    }
    return CubeSymmetry(std::move(p), std::move(f));
  }

  /// Composition: (a.then(b))(x) == b(a(x)).
  CubeSymmetry then(const CubeSymmetry& b) const {
    const auto n = perm.size();
    if (b.perm.size() != n) throw std::invalid_argument("CubeSymmetry::then: dimension mismatch");
    std::vector<int> p(n);
    std::vector<bool> f(n);
    for (std::size_t i = 0; i < n; ++i) {
      p[i] = b.perm[static_cast<std::size_t>(perm[i])];
      f[i] = flip[i] ^ b.flip[static_cast<std::size_t>(perm[i])];
    }
    return CubeSymmetry(std::move(p), std::move(f));
  }

  bool operator==(const CubeSymmetry&) const = default;

  /// Lexicographic order on the (perm, flip) encoding; used to pick a
  /// deterministic representative among equivalent normalizations.
  bool operator<(const CubeSymmetry& o) const {
    if (perm != o.perm) return perm < o.perm;
    return flip < o.flip;
  }

  std::string str() const {
    std::string s = "perm=";
    for (std::size_t i = 0; i < perm.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(perm[i] + 1);
    }
    s += " flip=";
    bool any = false;
    for (std::size_t i = 0; i < flip.size(); ++i) {
      if (flip[i]) {
        if (any) s += ",";
        s += std::to_string(i + 1);
        any = true;
      }
    }
    if (!any) s += "-";
    return s;
  }
};

inline Point apply_symmetry(const CubeSymmetry& s, const Point& p) {
  if (p.dim() != s.dim()) throw std::invalid_argument("apply_symmetry: dimension mismatch");
  std::vector<Rational> out(p.coords.size());
  for (std::size_t i = 0; i < p.coords.size(); ++i) {
    const auto& c = p.coords[i];
    out[static_cast<std::size_t>(s.perm[i])] = s.flip[i] ? Rational(1) - c : c;
  }
  return Point(std::move(out));
}

/// Image of a box; flipped axes reverse their interval ([a,b] -> [1-b,1-a]),
/// so the side-length sum is preserved.
inline Box apply_symmetry(const CubeSymmetry& s, const Box& b) {
  if (b.dim() != s.dim()) throw std::invalid_argument("apply_symmetry: dimension mismatch");
  std::vector<Rational> lo(b.lo.size()), hi(b.hi.size());
  for (std::size_t i = 0; i < b.lo.size(); ++i) {
    const auto j = static_cast<std::size_t>(s.perm[i]);
    if (s.flip[i]) {
      lo[j] = Rational(1) - b.hi[i];
      hi[j] = Rational(1) - b.lo[i];
    } else {
      lo[j] = b.lo[i];
      hi[j] = b.hi[i];
    }
  }
  return Box(std::move(lo), std::move(hi));
}

inline CubeFace apply_symmetry(const CubeSymmetry& s, const CubeFace& f) {
  if (f.dim_ambient != s.dim()) throw std::invalid_argument("apply_symmetry: dimension mismatch");
  std::map<int, int> fixed;
  for (const auto& [axis, value] : f.fixed) {
    const auto a = static_cast<std::size_t>(axis);
    fixed[s.perm[a]] = s.flip[a] ? 1 - value : value;
  }
  return CubeFace(f.dim_ambient, std::move(fixed));
}

/// All 2^n n! symmetries in lexicographic (perm, flip) order.
inline std::vector<CubeSymmetry> all_symmetries(int n) {
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<CubeSymmetry> out;
  do {
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      std::vector<bool> flip(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) flip[static_cast<std::size_t>(i)] = (mask >> i) & 1u;
      out.emplace_back(perm, std::move(flip));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::sort(out.begin(), out.end(),
            [](const CubeSymmetry& a, const CubeSymmetry& b) { return a < b; });
  return out;
}

}  // namespace boxcover

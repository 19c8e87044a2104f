#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "boxcover/geometry.hpp"
#include "boxcover/skeleton.hpp"
#include "boxcover/transforms.hpp"
#include "boxcover/verifier.hpp"

namespace boxcover {

/// Number of grid boxes per (n-2)-face: (n-2)^(n-2).
inline std::uint64_t star_grid_size(int n) {
  std::uint64_t g = 1;
  for (int i = 0; i < n - 2; ++i) g *= static_cast<std::uint64_t>(n - 2);
  return g;
}

/// The tiling of the (n-2)-skeleton by subcube grids: each (n-2)-face splits
/// into (n-2)^(n-2) cubes of side 1/(n-2), degenerate on the face's fixed
/// axes. Emitted face by face in canonical order, grid cells in odometer
/// order over the free axes; 2n(n-1)(n-2)^(n-2) boxes, side sum exactly 1.
inline Cover base_star_cover(int n) {
  if (n < 4) throw std::invalid_argument("base_star_cover: need n >= 4");
  const Rational c(1, n - 2);
  std::vector<Box> boxes;
  for (const auto& face : enumerate_faces(n, n - 2)) {
    const auto free = face.free_axes();
    std::vector<int> idx(free.size(), 0);
    while (true) {
      Box b = face.as_box();
      for (std::size_t j = 0; j < free.size(); ++j) {
        const auto a = static_cast<std::size_t>(free[j]);
        b.lo[a] = Rational(idx[j]) * c;
        b.hi[a] = Rational(idx[j] + 1) * c;
      }
      boxes.push_back(std::move(b));
      std::size_t j = free.size();
      bool done = true;
      while (j > 0) {
        --j;
        if (++idx[j] < n - 2) {
          done = false;
          break;
        }
        idx[j] = 0;
      }
      if (done) break;
    }
  }
  return Cover(n, std::move(boxes), BoxClass::NonStrict);
}

/// Point boxes covering a tangency set; duplicates collapse, so at most 2n.
inline Cover tangency_cover(const TangencySet& t) {
  if (!validate_tangency_set(t)) throw std::invalid_argument("tangency_cover: invalid tangency set");
  std::vector<Box> boxes;
  for (const auto& p : t.realized_points()) boxes.push_back(Box::point(p));
  return Cover(t.dim, std::move(boxes), BoxClass::Strict);
}

namespace detail {

/// Working state for the skeleton construction: the grid boxes plus the seed
/// box, with strictness tracked as boxes are modified.
struct SkeletonBuilder {
  int n;
  Rational c;
  std::uint64_t grid;  // boxes per face
  std::vector<CubeFace> faces;
  std::vector<Box> boxes;        // [0] is the seed box P0, then the face grids
  std::vector<bool> strict;
  EpsilonSchedule sched;

  explicit SkeletonBuilder(int n_, EpsilonSchedule s)
      : n(n_), c(1, n_ - 2), grid(star_grid_size(n_)), faces(enumerate_faces(n_, n_ - 2)), sched(s) {
    sched.validate();
  }

  std::size_t face_box_begin(std::size_t face_idx) const { return 1 + face_idx * grid; }

  std::vector<const Box*> strict_boxes() const {
    std::vector<const Box*> out;
    for (std::size_t i = 0; i < boxes.size(); ++i)
      if (strict[i]) out.push_back(&boxes[i]);
    return out;
  }

  /// Widens every strict box meeting `around`; returns the smallest margin
  /// applied, i.e. a radius whose neighborhood of `around` is now covered.
  Rational expand_strict_near(const Box& around) {
    std::optional<Rational> margin;
    for (std::size_t i = 0; i < boxes.size(); ++i) {
      if (!strict[i] || !boxes[i].intersects(around)) continue;
      const Rational m = expand_margin(boxes[i]);
      boxes[i] = expand_eps(boxes[i]);
      margin = margin ? boxcover::min(*margin, m) : m;
    }
    if (!margin) throw ConstructionError("expand step found no strict box near the region");
    return *margin;
  }

  void check_region_covered(const Box& region, const std::string& what) const {
    if (!boxcover::detail::covers_region(strict_boxes(), region).covered)
      throw ConstructionError("coverage check failed at " + what);
  }
};

}  // namespace detail

/// The (n-2)-skeleton cover in the strict family: the grid tiling plus one
/// extra seed box, reshaped face by face with the widening and compression
/// moves until every box is strict. Exactly 2n(n-1)(n-2)^(n-2) + 1 boxes.
///
/// The sequence follows the face-by-face induction: a seed face is made
/// strict by alternating widen/compress steps over its axes, then faces are
/// attached breadth-first through shared (n-3)-faces, each new face compressed
/// away from the shared ridge after the ridge neighborhood is widened. Every
/// step is re-verified exactly; a failed step retries with a smaller epsilon.
///
/// Proved for n >= 5; n = 4 also executes (96 + 1 boxes) but is dominated by
/// the dedicated four-dimensional construction.
inline Cover prop1_cover(int n, const EpsilonSchedule& sched = {}) {
  if (n < 4) throw std::invalid_argument("prop1_cover: need n >= 4");
  detail::SkeletonBuilder w(n, sched);

  // Seed box P0 on the seed face [0,1]^(n-2) x {0}^2: degenerate on the last
  // three axes, [0, 1/(n-2)] on the rest.
  {
    Box p0 = Box::unit_cube(n);
    for (int a = 0; a < n; ++a) {
      const auto i = static_cast<std::size_t>(a);
      p0.lo[i] = Rational(0);
      p0.hi[i] = a < n - 3 ? w.c : Rational(0);
    }
    w.boxes.push_back(std::move(p0));
  }
  {
    Cover grid_cover = base_star_cover(n);
    for (auto& b : grid_cover.boxes) w.boxes.push_back(std::move(b));
  }
  w.strict.assign(w.boxes.size(), false);
  w.strict[0] = true;

  const auto face_index = [&](const CubeFace& f) {
    const auto it = std::find(w.faces.begin(), w.faces.end(), f);
    return static_cast<std::size_t>(it - w.faces.begin());
  };

  // One widen/compress step: widen the strict boxes meeting `seed_region`,
  // then compress `member_indices` (which tile `target`) along `axis` so the
  // vacated slab stays inside the widened neighborhood.
  const auto step = [&](const Box& seed_region, const std::vector<std::size_t>& members,
                        const Box& target, int axis, bool anchor_low, const Box& check_region,
                        const std::string& what) {
    const std::vector<Box> snapshot_boxes(w.boxes);
    Rational cap = w.sched.initial;
    for (int attempt = 0;; ++attempt) {
      const Rational margin = w.expand_strict_near(seed_region);
      const Rational gamma =
          target.hi[static_cast<std::size_t>(axis)] - target.lo[static_cast<std::size_t>(axis)];
      const Rational eps = boxcover::min(boxcover::min(margin, cap), gamma / Rational(2));

      std::vector<Box> members_now;
      members_now.reserve(members.size());
      for (auto i : members) members_now.push_back(w.boxes[i]);
      Box tgt = target;
      if (anchor_low) {
        // Mirror through the axis flip so the compression moves the slab
        // downward from the top end instead.
        CubeSymmetry flip = CubeSymmetry::identity(n);
        flip.flip[static_cast<std::size_t>(axis)] = true;
        for (auto& b : members_now) b = apply_symmetry(flip, b);
        tgt = apply_symmetry(flip, tgt);
        auto compressed = compress_along(members_now, tgt, axis, eps);
        for (std::size_t j = 0; j < members.size(); ++j)
          w.boxes[members[j]] = apply_symmetry(flip, compressed[j]);
      } else {
        auto compressed = compress_along(members_now, tgt, axis, eps);
        for (std::size_t j = 0; j < members.size(); ++j) w.boxes[members[j]] = compressed[j];
      }
      for (auto i : members) w.strict[i] = box_in_class(w.boxes[i], BoxClass::Strict);

      if (boxcover::detail::covers_region(w.strict_boxes(), check_region).covered) return;
      if (attempt >= w.sched.max_retries)
        throw ConstructionError("schedule exhausted at " + what);
      w.boxes = snapshot_boxes;
      cap = cap * w.sched.shrink_factor;
    }
  };

  // Seed face: fixed axes {n-2, n-1} at 0. Alternate widen/compress over
  // axes n-3 down to 0, each compression acting on the so-far untouched grid
  // column/block beyond the widened slab.
  CubeFace seed_face(n, {{n - 2, 0}, {n - 1, 0}});
  const std::size_t seed_idx = face_index(seed_face);
  const auto seed_grid_cell = [&](const std::vector<int>& idx) {
    std::uint64_t linear = 0;
    for (int v : idx) linear = linear * static_cast<std::uint64_t>(n - 2) + static_cast<std::uint64_t>(v);
    return w.face_box_begin(seed_idx) + linear;
  };

  for (int stepno = 1; stepno <= n - 2; ++stepno) {
    const int axis = n - 2 - stepno;  // compression axis for this step

    // Region already covered by strict boxes (the widening anchor).
    Box seed_region = seed_face.as_box();
    for (int a = 0; a < n - 2; ++a) {
      const auto i = static_cast<std::size_t>(a);
      if (a <= axis) seed_region.hi[i] = w.c;
      if (stepno == 1 && a == axis) seed_region.hi[i] = Rational(0);
    }

    // Grid cells forming the compression block: first cell on axes < axis,
    // cells 1.. on the axis itself (all of them at the first step), anything
    // on the later axes.
    std::vector<std::size_t> members;
    std::vector<int> idx(static_cast<std::size_t>(n - 2), 0);
    const int axis_from = stepno == 1 ? 0 : 1;
    const auto collect = [&](auto&& self, int pos) -> void {
      if (pos == n - 2) {
        members.push_back(seed_grid_cell(idx));
        return;
      }
      int from = 0, to = n - 3;
      if (pos < axis) from = to = 0;
      if (pos == axis) from = axis_from;
      for (int v = from; v <= to; ++v) {
        idx[static_cast<std::size_t>(pos)] = v;
        self(self, pos + 1);
      }
    };
    collect(collect, 0);

    Box target = seed_face.as_box();
    for (int a = 0; a < axis; ++a) target.hi[static_cast<std::size_t>(a)] = w.c;
    if (stepno > 1) target.lo[static_cast<std::size_t>(axis)] = w.c;

    Box check = seed_face.as_box();
    for (int a = 0; a < axis; ++a) check.hi[static_cast<std::size_t>(a)] = w.c;

    step(seed_region, members, target, axis, /*anchor_low=*/false, check,
         "seed step " + std::to_string(stepno));
  }

  // Attach the remaining faces breadth-first through shared (n-3)-faces.
  std::vector<bool> done(w.faces.size(), false);
  done[seed_idx] = true;
  const auto shared_ridge = [&](const CubeFace& a, const CubeFace& b) -> std::optional<CubeFace> {
    std::map<int, int> fixed = a.fixed;
    for (const auto& [axis, value] : b.fixed) {
      const auto it = fixed.find(axis);
      if (it != fixed.end() && it->second != value) return std::nullopt;
      fixed[axis] = value;
    }
    if (fixed.size() != 3) return std::nullopt;
    return CubeFace(n, std::move(fixed));
  };

  for (std::size_t processed = 1; processed < w.faces.size();) {
    bool advanced = false;
    for (std::size_t fi = 0; fi < w.faces.size(); ++fi) {
      if (done[fi]) continue;
      std::optional<CubeFace> ridge;
      for (std::size_t pj = 0; pj < w.faces.size() && !ridge; ++pj)
        if (done[pj]) ridge = shared_ridge(w.faces[fi], w.faces[pj]);
      if (!ridge) continue;

      // The ridge adds one fixed axis to the face; compression runs along it,
      // away from the ridge value.
      int ridge_axis = -1, ridge_value = 0;
      for (const auto& [axis, value] : ridge->fixed)
        if (!w.faces[fi].is_fixed(axis)) {
          ridge_axis = axis;
          ridge_value = value;
        }

      std::vector<std::size_t> members(w.grid);
      for (std::uint64_t g = 0; g < w.grid; ++g) members[g] = w.face_box_begin(fi) + g;

      step(ridge->as_box(), members, w.faces[fi].as_box(), ridge_axis,
           /*anchor_low=*/ridge_value == 1, w.faces[fi].as_box(),
           "face " + w.faces[fi].str());
      done[fi] = true;
      ++processed;
      advanced = true;
    }
    if (!advanced) throw ConstructionError("face adjacency walk stalled");
  }

  Cover out(n, std::move(w.boxes), BoxClass::Strict);
  if (!verify_class(out)) throw ConstructionError("final cover contains a non-strict box");
  if (!covers_target(out, skeleton_target(n, n - 2)).covered)
    throw ConstructionError("final cover misses part of the skeleton");
  return out;
}

}  // namespace boxcover

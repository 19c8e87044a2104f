#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

#include "boxcover/geometry.hpp"
#include "boxcover/skeleton.hpp"

namespace boxcover {

/// An ordered list of boxes with the class constraint they are declared to
/// satisfy. Membership is never assumed; verify_class re-checks it.
struct Cover {
  int dim = 0;
  std::vector<Box> boxes;
  BoxClass declared_class = BoxClass::Strict;

  Cover() = default;
  Cover(int n, std::vector<Box> bs, BoxClass c) : dim(n), boxes(std::move(bs)), declared_class(c) {
    for (const auto& b : boxes)
      if (b.dim() != n) throw std::invalid_argument("Cover: box dimension mismatch");
  }
};

inline bool verify_class(const Cover& c) {
  for (const auto& b : c.boxes)
    if (!box_in_class(b, c.declared_class)) return false;
  return true;
}

struct CoverageReport {
  bool covered = true;
  std::optional<Point> witness;
  std::uint64_t cells_checked = 0;
  std::uint64_t faces_checked = 0;
};

namespace detail {

/// Fixed-capacity bitset over candidate box indices.
class BoxMask {
 public:
  explicit BoxMask(std::size_t bits, bool ones = false)
      : words_((bits + 63) / 64, ones ? ~std::uint64_t{0} : 0), bits_(bits) {
    trim();
  }
  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  bool any() const {
    for (auto w : words_)
      if (w) return true;
    return false;
  }
  void and_into(const BoxMask& other, BoxMask& out) const {
    for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] = words_[i] & other.words_[i];
  }

 private:
  void trim() {
    if (bits_ % 64 && !words_.empty()) words_.back() &= (std::uint64_t{1} << (bits_ % 64)) - 1;
  }
  std::vector<std::uint64_t> words_;
  std::size_t bits_;
};

struct RegionResult {
  bool covered = true;
  std::optional<Point> witness;
  std::uint64_t cells = 0;
};

/// Exact coverage decision for one axis-aligned region (a box, possibly
/// degenerate on some axes) by cell decomposition.
///
/// Candidate boxes are those meeting the closed region on every axis. Each
/// non-degenerate axis splits at every candidate endpoint (clamped into the
/// region), producing cells bounded by consecutive breakpoints. A closed box
/// containing a cell midpoint contains the whole closed cell, since every box
/// boundary is a breakpoint; so the region is covered iff each cell midpoint
/// lies in some candidate. Cell/box incidence is resolved per axis and
/// intersected, avoiding a per-cell scan over boxes.
///
/// The witness for an uncovered region is the lexicographically smallest
/// uncovered cell midpoint; iteration follows breakpoint order, axis by axis.
inline RegionResult covers_region(const std::vector<const Box*>& boxes, const Box& region) {
  const int n = region.dim();
  RegionResult res;

  std::vector<const Box*> cand;
  for (const Box* b : boxes)
    if (b->intersects(region)) cand.push_back(b);

  std::vector<int> free_axes;
  for (int a = 0; a < n; ++a)
    if (region.lo[static_cast<std::size_t>(a)] < region.hi[static_cast<std::size_t>(a)])
      free_axes.push_back(a);

  if (free_axes.empty()) {
    res.cells = 1;
    if (cand.empty()) {
      res.covered = false;
      res.witness = Point(region.lo);
    }
    return res;
  }

  const std::size_t k = free_axes.size();
  std::vector<std::vector<Rational>> breaks(k);
  // incidence[j][cell] is the mask of candidates covering that cell interval.
  std::vector<std::vector<BoxMask>> incidence(k);

  for (std::size_t j = 0; j < k; ++j) {
    const auto a = static_cast<std::size_t>(free_axes[j]);
    auto& pts = breaks[j];
    pts.push_back(region.lo[a]);
    pts.push_back(region.hi[a]);
    for (const Box* b : cand) {
      if (region.lo[a] < b->lo[a] && b->lo[a] < region.hi[a]) pts.push_back(b->lo[a]);
      if (region.lo[a] < b->hi[a] && b->hi[a] < region.hi[a]) pts.push_back(b->hi[a]);
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    const std::size_t cells = pts.size() - 1;
    incidence[j].assign(cells, BoxMask(cand.size()));
    for (std::size_t bi = 0; bi < cand.size(); ++bi) {
      const Box* b = cand[bi];
      // The candidate covers the consecutive run of intervals inside [lo,hi].
      const auto first = std::lower_bound(pts.begin(), pts.end(), b->lo[a]) - pts.begin();
      const auto last = std::upper_bound(pts.begin(), pts.end(), b->hi[a]) - pts.begin();
      for (auto c = static_cast<std::size_t>(first);
           c + 1 < static_cast<std::size_t>(last) && c < cells; ++c)
        incidence[j][c].set(bi);
    }
  }

  // Odometer over cell indices with running prefix intersections. An empty
  // prefix at depth j fails every completion; the lexicographically first of
  // them (all-zero suffix) is the witness cell.
  std::vector<std::size_t> idx(k, 0);
  std::vector<BoxMask> prefix(k + 1, BoxMask(cand.size(), true));
  std::size_t depth = 0;
  while (true) {
    bool empty_at = false;
    for (; depth < k; ++depth) {
      prefix[depth].and_into(incidence[depth][idx[depth]], prefix[depth + 1]);
      if (!prefix[depth + 1].any()) {
        empty_at = true;
        break;
      }
    }
    ++res.cells;
    if (empty_at) {
      res.covered = false;
      Point w(region.lo);
      for (std::size_t j = 0; j < k; ++j) {
        const std::size_t c = j <= depth ? idx[j] : 0;
        w[free_axes[j]] = (breaks[j][c] + breaks[j][c + 1]) / Rational(2);
      }
      res.witness = std::move(w);
      return res;
    }
    // Advance the odometer from the last position.
    std::size_t j = k;
    while (j > 0) {
      --j;
      if (++idx[j] < incidence[j].size()) break;
      idx[j] = 0;
      if (j == 0) return res;
    }
    depth = j;
  }
}

inline RegionResult covers_region(const std::vector<Box>& boxes, const Box& region) {
  std::vector<const Box*> ptrs;
  ptrs.reserve(boxes.size());
  for (const auto& b : boxes) ptrs.push_back(&b);
  return covers_region(ptrs, region);
}

/// Runs fn(i) for i in [0, count) over the given number of threads. Results
/// must be written to per-index slots; ordering is re-imposed by the caller.
template <typename Fn>
void parallel_for(std::size_t count, int threads, Fn&& fn) {
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  const auto workers = static_cast<std::size_t>(threads);
  std::vector<std::thread> pool;
  std::atomic<std::size_t> next{0};
  for (std::size_t w = 0; w < std::min(workers, count); ++w) {
    pool.emplace_back([&]() {
      for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace detail

/// Exact decision: does the cover contain the face? On failure the witness is
/// the lexicographically smallest uncovered cell midpoint.
inline std::pair<bool, std::optional<Point>> covers_face(const Cover& c, const CubeFace& f) {
  if (c.dim != f.dim_ambient) throw std::invalid_argument("covers_face: dimension mismatch");
  auto r = detail::covers_region(c.boxes, f.as_box());
  return {r.covered, std::move(r.witness)};
}

/// Coverage of a whole target. Faces, then segments, then points are checked
/// in their listed order; the first failing part in that order supplies the
/// witness. Parts are independent, so the report does not depend on the
/// thread count.
inline CoverageReport covers_target(const Cover& c, const Target& t, int threads = 1) {
  if (c.dim != t.dim) throw std::invalid_argument("covers_target: dimension mismatch");

  std::vector<Box> regions;
  regions.reserve(t.faces.size() + t.segments.size() + t.points.size());
  for (const auto& f : t.faces) regions.push_back(f.as_box());
  for (const auto& s : t.segments) regions.push_back(s.as_box());
  for (const auto& p : t.points) regions.push_back(Box::point(p));

  std::vector<detail::RegionResult> results(regions.size());
  detail::parallel_for(regions.size(), threads, [&](std::size_t i) {
    results[i] = detail::covers_region(c.boxes, regions[i]);
  });

  CoverageReport rep;
  rep.faces_checked = t.faces.size();
  for (std::size_t i = 0; i < results.size(); ++i) {
    rep.cells_checked += results[i].cells;
    if (!results[i].covered && rep.covered) {
      rep.covered = false;
      rep.witness = std::move(results[i].witness);
    }
  }
  return rep;
}

inline std::optional<Point> find_witness(const Cover& c, const Target& t, int threads = 1) {
  return covers_target(c, t, threads).witness;
}

/// True iff the boxes lie inside `b` and their union is exactly `b`.
inline bool union_equals_box(const std::vector<Box>& boxes, const Box& b) {
  for (const auto& x : boxes)
    if (!b.contains_box(x)) return false;
  return detail::covers_region(boxes, b).covered;
}

inline bool union_equals_box(const Cover& c, const Box& b) {
  return union_equals_box(c.boxes, b);
}

}  // namespace boxcover

#pragma once

// Shared test helpers: deterministic random geometry and the brute-force
// grid membership oracle the cell-decomposition verifier is checked against.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "boxcover/geometry.hpp"
#include "boxcover/skeleton.hpp"
#include "boxcover/verifier.hpp"

namespace testsupport {

using boxcover::Box;
using boxcover::Point;
using boxcover::Rational;

inline Rational random_rational(std::mt19937_64& rng, std::int64_t max_den = 1 << 16) {
  std::uniform_int_distribution<std::int64_t> den_dist(1, max_den);
  const std::int64_t den = den_dist(rng);
  std::uniform_int_distribution<std::int64_t> num_dist(0, den);
  return Rational(num_dist(rng), den);
}

/// Random rational with denominator dividing `den`, in [0,1].
inline Rational random_grid_rational(std::mt19937_64& rng, std::int64_t den) {
  std::uniform_int_distribution<std::int64_t> num_dist(0, den);
  return Rational(num_dist(rng), den);
}

inline boxcover::TangencySet random_tangency_set(std::mt19937_64& rng, int n = 4,
                                                 std::int64_t max_den = 1 << 16) {
  std::vector<Point> bases;
  for (int i = 0; i < n; ++i) {
    std::vector<Rational> coords(static_cast<std::size_t>(n));
    for (int a = 0; a < n; ++a)
      coords[static_cast<std::size_t>(a)] =
          a == i ? Rational(0) : random_rational(rng, max_den);
    bases.emplace_back(std::move(coords));
  }
  return boxcover::TangencySet(n, std::move(bases));
}

/// Random strict box inside [0,1]^n with denominator-bounded coordinates.
inline Box random_strict_box(std::mt19937_64& rng, int n, std::int64_t den = 64) {
  while (true) {
    std::vector<Rational> lo(static_cast<std::size_t>(n)), hi(static_cast<std::size_t>(n));
    for (int a = 0; a < n; ++a) {
      const auto i = static_cast<std::size_t>(a);
      Rational x = random_grid_rational(rng, den);
      Rational y = random_grid_rational(rng, den);
      lo[i] = boxcover::min(x, y);
      hi[i] = boxcover::max(x, y);
    }
    Box b(std::move(lo), std::move(hi));
    if (boxcover::box_in_class(b, boxcover::BoxClass::Strict)) return b;
  }
}

inline boxcover::CubeSymmetry random_symmetry(std::mt19937_64& rng, int n) {
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<bool> flip(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) flip[static_cast<std::size_t>(i)] = rng() & 1u;
  return boxcover::CubeSymmetry(std::move(perm), std::move(flip));
}

/// Brute-force coverage oracle: tests every grid point at half-step spacing
/// 1/(2D) that lies in the target. The grid contains every cell midpoint the
/// verifier can produce when all inputs have denominators dividing D, so any
/// disagreement with the cell decomposition is a bug. Exponential; keep to
/// n <= 4 and small D.
inline bool grid_oracle_covers(const boxcover::Cover& cover, const boxcover::Target& target,
                               std::int64_t d) {
  const int n = cover.dim;
  const std::int64_t step_count = 2 * d;

  // Scaled integer copies of the boxes; coordinates outside [0,1] are fine.
  struct IBox {
    std::vector<std::int64_t> lo, hi;
  };
  std::vector<IBox> iboxes;
  for (const auto& b : cover.boxes) {
    IBox ib;
    for (int a = 0; a < n; ++a) {
      const auto i = static_cast<std::size_t>(a);
      const Rational l = b.lo[i] * Rational(step_count);
      const Rational h = b.hi[i] * Rational(step_count);
      if (!l.is_integer() || !h.is_integer())
        throw std::invalid_argument("grid oracle: box not on the grid");
      ib.lo.push_back(static_cast<std::int64_t>(l.numerator()));
      ib.hi.push_back(static_cast<std::int64_t>(h.numerator()));
    }
    iboxes.push_back(std::move(ib));
  }

  std::vector<std::int64_t> p(static_cast<std::size_t>(n), 0);
  std::vector<Rational> coords(static_cast<std::size_t>(n));
  while (true) {
    for (int a = 0; a < n; ++a)
      coords[static_cast<std::size_t>(a)] = Rational(p[static_cast<std::size_t>(a)], step_count);
    const Point pt{std::vector<Rational>(coords)};
    if (target.contains(pt)) {
      bool hit = false;
      for (const auto& ib : iboxes) {
        bool in = true;
        for (int a = 0; a < n && in; ++a) {
          const auto i = static_cast<std::size_t>(a);
          in = ib.lo[i] <= p[i] && p[i] <= ib.hi[i];
        }
        if (in) {
          hit = true;
          break;
        }
      }
      if (!hit) return false;
    }
    int a = n - 1;
    while (a >= 0) {
      if (++p[static_cast<std::size_t>(a)] <= step_count) break;
      p[static_cast<std::size_t>(a)] = 0;
      --a;
    }
    if (a < 0) break;
  }
  return true;
}

}  // namespace testsupport

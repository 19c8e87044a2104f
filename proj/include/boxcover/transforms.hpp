#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "boxcover/geometry.hpp"
#include "boxcover/verifier.hpp"

namespace boxcover {

/// Raised when a construction step cannot be completed; carries the step
/// description and the epsilon history tried so far.
struct ConstructionError : std::runtime_error {
  explicit ConstructionError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Retry policy for the epsilon-dependent construction steps. Every step is
/// validated by the exact verifier, so any sufficiently small epsilon is
/// safe; the schedule just bounds the search.
struct EpsilonSchedule {
  Rational initial{1, 64};
  Rational shrink_factor{1, 4};
  int max_retries = 8;

  void validate() const {
    if (!(initial > Rational(0))) throw std::invalid_argument("EpsilonSchedule: initial <= 0");
    if (!(shrink_factor > Rational(0)) || !(shrink_factor < Rational(1)))
      throw std::invalid_argument("EpsilonSchedule: shrink_factor outside (0,1)");
    if (max_retries < 0) throw std::invalid_argument("EpsilonSchedule: negative retries");
  }
};

/// Margin used when widening a box: a third of the slack, split over the 2n
/// interval ends, so the result keeps a third of the slack and stays strict.
inline Rational expand_margin(const Box& b) {
  return (Rational(1) - b.side_sum()) / Rational(3 * b.dim());
}

/// Widens a strict box by its margin on every side. The result contains the
/// closed per-axis margin-neighborhood of the input and is still strict:
/// the new side sum is (2 + old sum) / 3 < 1.
inline Box expand_eps(const Box& b) {
  if (!box_in_class(b, BoxClass::Strict))
    throw std::invalid_argument("expand_eps: input box is not strict");
  const Rational eps = expand_margin(b);
  std::vector<Rational> lo(b.lo), hi(b.hi);
  for (std::size_t i = 0; i < lo.size(); ++i) {
    lo[i] -= eps;
    hi[i] += eps;
  }
  return Box(std::move(lo), std::move(hi));
}

/// Linear compression of a partition of `target` along axis k: the affine map
/// fixes the top of the target's k-interval and raises the bottom by eps.
/// Inputs must tile the target exactly and have positive extent on axis k;
/// outputs tile the target with its k-interval start raised by eps, and any
/// input with side sum <= 1 comes out strict.
inline std::vector<Box> compress_along(const std::vector<Box>& boxes, const Box& target, int k,
                                       const Rational& eps) {
  const auto ka = static_cast<std::size_t>(k);
  const Rational gamma = target.hi[ka] - target.lo[ka];
  if (!(Rational(0) < eps) || !(eps < gamma))
    throw std::invalid_argument("compress_along: eps outside (0, target side)");
  for (const auto& b : boxes)
    if (!(b.lo[ka] < b.hi[ka]))
      throw std::invalid_argument("compress_along: box degenerate along compression axis");
  if (!union_equals_box(boxes, target))
    throw std::invalid_argument("compress_along: boxes do not tile the target");

  // l(y) = top - (top - y) * (gamma - eps) / gamma maps [lo, top] to [lo+eps, top].
  const Rational& top = target.hi[ka];
  const Rational slope = (gamma - eps) / gamma;
  std::vector<Box> out;
  out.reserve(boxes.size());
  for (const auto& b : boxes) {
    std::vector<Rational> lo(b.lo), hi(b.hi);
    lo[ka] = top - (top - b.lo[ka]) * slope;
    hi[ka] = top - (top - b.hi[ka]) * slope;
    out.emplace_back(std::move(lo), std::move(hi));
  }
  return out;
}

}  // namespace boxcover

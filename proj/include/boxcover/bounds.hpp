#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace boxcover {

using BigInt = boost::multiprecision::cpp_int;

/// (n+1) n^(n-1) - (n-1) (n-2)^(n-1), evaluated exactly.
inline BigInt lassak_bound(int n) {
  if (n < 3) throw std::invalid_argument("lassak_bound: need n >= 3");
  const auto ipow = [](BigInt base, int e) {
    BigInt r = 1;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
  };
  return BigInt(n + 1) * ipow(n, n - 1) - BigInt(n - 1) * ipow(n - 2, n - 1);
}

/// floor( C(2n, n) * n * (ln n + ln ln n + 5) ).
///
/// The binomial is exact; the logarithmic factor is evaluated at two
/// precisions with a generous error envelope, and the result is accepted
/// only when the envelope pins a single integer.
inline BigInt rogers_bound(int n) {
  if (n < 3) throw std::invalid_argument("rogers_bound: need n >= 3");
  BigInt binom = 1;
  for (int i = 1; i <= n; ++i) {
    binom *= n + i;
    binom /= i;
  }

  const auto eval = [&](auto float_tag) -> BigInt {
    using F = decltype(float_tag);
    const F ln_n = log(F(n));
    const F value = F(binom) * n * (ln_n + log(ln_n) + 5);
    // Envelope: a handful of transcendental ops, each within a few ulp.
    const F eps = value * std::numeric_limits<F>::epsilon() * 64;
    const BigInt lo = BigInt(floor(value - eps));
    const BigInt hi = BigInt(floor(value + eps));
    if (lo != hi) throw std::runtime_error("rogers_bound: precision too low");
    return lo;
  };

  try {
    return eval(boost::multiprecision::cpp_bin_float_50{});
  } catch (const std::runtime_error&) {
    return eval(boost::multiprecision::cpp_bin_float_100{});
  }
}

/// The certified bound: 96 in dimension four, 2n(n-1)(n-2)^(n-2) + 2n + 1
/// above.
inline BigInt paper_bound(int n) {
  if (n < 4) throw std::invalid_argument("paper_bound: need n >= 4");
  if (n == 4) return 96;
  BigInt grid = 1;
  for (int i = 0; i < n - 2; ++i) grid *= n - 2;
  return BigInt(2 * n) * (n - 1) * grid + 2 * n + 1;
}

struct BoundsRow {
  int n = 0;
  BigInt this_work;
  BigInt lassak;
  BigInt rogers;
  bool certified = false;  // backed by an executable construction here
};

inline BoundsRow bounds_row(int n) {
  return BoundsRow{n, paper_bound(n), lassak_bound(n), rogers_bound(n), n >= 4 && n <= 6};
}

inline std::vector<BoundsRow> bounds_table(int from, int to) {
  std::vector<BoundsRow> rows;
  for (int n = from; n <= to; ++n) rows.push_back(bounds_row(n));
  return rows;
}

}  // namespace boxcover

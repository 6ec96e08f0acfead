#pragma once

// Direct transcriptions of the classical one-dimensional algorithms on plain
// integer variables, kept separate from the matrix engines on purpose.

#include <array>
#include <vector>

#include "mcf/exactnum.h"

namespace mcf::testing {

inline bool same_sign(const BigInt& p, const BigInt& q) {
  return (p > 0 && q > 0) || (p < 0 && q < 0);
}

// (a x + b) / (c x + d) for x = [xs...]; x must lie in [1, inf).
inline std::vector<BigInt> homographic(const std::vector<BigInt>& xs, BigInt a, BigInt b, BigInt c,
                                       BigInt d, std::size_t M, std::size_t N) {
  std::vector<BigInt> out;
  std::size_t r = 0, t = 0;
  while (out.size() < M && r < N) {
    if (same_sign(c, c + d) && floor_div(a, c) == floor_div(a + b, c + d)) {
      const BigInt q = floor_div(a, c);
      BigInt na = c, nb = d, nc = a - q * c, nd = b - q * d;
      a = na, b = nb, c = nc, d = nd;
      out.push_back(q);
    } else {
      if (t >= xs.size()) break;
      const BigInt& p = xs[t++];
      BigInt na = a * p + b, nb = a, nc = c * p + d, nd = c;
      a = na, b = nb, c = nc, d = nd;
    }
    ++r;
  }
  return out;
}

// (a x y + b x + c y + d) / (e x y + f x + g y + h), reading x and y in turn.
inline std::vector<BigInt> bihomographic(const std::vector<BigInt>& xs, const std::vector<BigInt>& ys,
                                         std::array<BigInt, 8> k, std::size_t M, std::size_t N) {
  auto& [a, b, c, d, e, f, g, h] = k;
  std::vector<BigInt> out;
  std::size_t r = 0, u = 0, v = 0;
  while (out.size() < M && r < N) {
    const bool signs = same_sign(e, e + f) && same_sign(e, e + g) && same_sign(e, e + f + g + h);
    const BigInt q = signs ? floor_div(a, e) : BigInt(0);
    if (signs && floor_div(a + b, e + f) == q && floor_div(a + c, e + g) == q &&
        floor_div(a + b + c + d, e + f + g + h) == q) {
      k = {e, f, g, h, a - e * q, b - f * q, c - g * q, d - h * q};
      out.push_back(q);
    } else if (u == v) {
      if (u >= xs.size()) break;
      const BigInt& p = xs[u++];
      k = {a * p + c, b * p + d, a, b, e * p + g, f * p + h, e, f};
    } else {
      if (v >= ys.size()) break;
      const BigInt& p = ys[v++];
      k = {a * p + b, a, c * p + d, c, e * p + f, e, g * p + h, g};
    }
    ++r;
  }
  return out;
}

}  // namespace mcf::testing

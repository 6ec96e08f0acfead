#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "mcf/exactnum.h"
#include "mcf/mcf.h"

namespace mcf {

// An m-tuple of reals that can be enclosed to any requested precision.
// enclose(bits) returns one interval per component of width roughly 2^-bits;
// enclosures for larger bit counts nest inside those for smaller ones.
class RealSource {
 public:
  virtual ~RealSource() = default;
  virtual std::size_t dimension() const = 0;
  virtual std::vector<Interval> enclose(std::size_t bits) const = 0;
  virtual std::string describe() const = 0;
  // True when every component is an exact rational (enclosures are points).
  virtual bool is_exact() const { return false; }
};

using SourcePtr = std::shared_ptr<const RealSource>;

SourcePtr rational_source(std::vector<Rational> values);

// (d^(1/k), d^(2/k), ..., d^(m/k)); enclosures are dyadic with exact
// endpoints from integer k-th roots.
SourcePtr root_power_source(const BigInt& d, unsigned k, std::size_t m);
inline SourcePtr sqrt_source(const BigInt& d) { return root_power_source(d, 2, 1); }
// (cbrt d, cbrt d^2) for m = 2, (cbrt d) for m = 1.
inline SourcePtr cube_root_source(const BigInt& d, std::size_t m = 2) {
  return root_power_source(d, 3, m);
}

// The value of an MCF whose tails are nonnegative (true for admissible
// streams). Enclosed by the hull of the convergent-column ratios, which nest
// as more steps are taken. A finite MCF evaluates exactly.
SourcePtr mcf_source(Mcf mcf, std::size_t max_steps = 1 << 14);

// "rational:3/2,5/7", "sqrt:8", "cbrt:2", "root:K:D". m selects how many powers
// a root source yields; it must match the rational tuple length.
SourcePtr parse_source(const std::string& spec, std::size_t m);

struct JpaOptions {
  std::size_t initial_bits = 64;
  std::size_t max_bits = 4096;
};

// First n quotient tuples of the Jacobi-Perron expansion
//   a_n^(i) = floor(x_n^(i)),
//   x_{n+1}^(1) = 1 / (x_n^(m) - a_n^(m)),
//   x_{n+1}^(i) = (x_n^(i-1) - a_n^(i-1)) / (x_n^(m) - a_n^(m)).
// Every floor is certified by interval arithmetic; working precision doubles
// until it is. Throws Terminated when x_n^(m) is exactly integral and more
// steps were requested, PrecisionExhausted when the budget runs out.
std::vector<Tuple> jpa_expand(const SourcePtr& source, std::size_t n, const JpaOptions& opts = {});

// Enclosure of the complete quotient x_n (after n certified steps), computed
// with the source enclosed at `bits`. Floors along the way are certified; the
// working precision is raised only as far as that requires.
std::vector<Interval> jpa_complete_quotient(const SourcePtr& source, std::size_t n,
                                            std::size_t bits, const JpaOptions& opts = {});

// Lazily expanded stream over a source. The stream ends if the expansion
// terminates; PrecisionExhausted propagates from at().
Mcf jpa_stream(const SourcePtr& source, const JpaOptions& opts = {});

}  // namespace mcf

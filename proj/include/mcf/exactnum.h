#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mcf {

using BigInt = mpz_class;
using Rational = mpq_class;

// One column of partial quotients (a^(1), ..., a^(m)).
using Tuple = std::vector<BigInt>;

// Mathematical floor of a/b (rounds toward negative infinity for every sign
// combination). Throws DivisionByZero when b == 0.
BigInt floor_div(const BigInt& a, const BigInt& b);

// True iff every value is strictly positive or every value is strictly
// negative. A zero anywhere makes the signs "differ". Throws
// std::invalid_argument on an empty list.
bool same_strict_sign(std::span<const BigInt> values);

// Canonical num/den. Throws DivisionByZero when den == 0.
Rational make_rational(const BigInt& num, const BigInt& den);

BigInt floor(const Rational& q);
BigInt ceil(const Rational& q);

// Number of bits in |x|; 0 for zero.
std::size_t bit_length(const BigInt& x);

std::string to_string(const Tuple& t);

// Closed interval [lo, hi] with rational endpoints. Arithmetic is exact on the
// endpoints, so every result contains the true result; rounded_outward()
// trades width for endpoint size.
class Interval {
 public:
  Interval() = default;
  explicit Interval(const Rational& point);
  Interval(Rational lo, Rational hi);

  static Interval from_integer(const BigInt& n) { return Interval(Rational(n)); }

  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  Rational width() const { return hi_ - lo_; }
  bool is_point() const { return lo_ == hi_; }
  bool contains(const Rational& q) const { return lo_ <= q && q <= hi_; }
  bool contains(const Interval& other) const { return lo_ <= other.lo_ && other.hi_ <= hi_; }
  bool contains_zero() const { return lo_ <= 0 && hi_ >= 0; }

  // Endpoints pushed outward to multiples of 2^-frac_bits. Point intervals are
  // left untouched so exact rational computations stay exact.
  Interval rounded_outward(std::size_t frac_bits) const;

  Interval operator-() const { return Interval(-hi_, -lo_); }
  friend Interval operator+(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& a, const Interval& b);
  // Throws DivisionByZero when b contains zero.
  friend Interval operator/(const Interval& a, const Interval& b);
  friend Interval operator*(const BigInt& k, const Interval& a);

  friend bool operator==(const Interval& a, const Interval& b) {
    return a.lo_ == b.lo_ && a.hi_ == b.hi_;
  }

 private:
  Rational lo_;
  Rational hi_;
};

std::ostream& operator<<(std::ostream& os, const Interval& x);

// The floor of every point of x, if they all agree.
std::optional<BigInt> certified_floor(const Interval& x);

struct RefineBudget {
  std::size_t initial_bits = 64;
  std::size_t max_bits = 4096;
};

// Certified floor of the real enclosed by x. While the floor is ambiguous,
// refine(bits) is called with a doubling bit count to obtain a narrower
// enclosure of the same real. Throws PrecisionExhausted once the budget is
// spent.
BigInt interval_floor(const Interval& x, const std::function<Interval(std::size_t)>& refine,
                      const RefineBudget& budget = {});

}  // namespace mcf

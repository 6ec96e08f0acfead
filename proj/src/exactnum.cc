#include "mcf/exactnum.h"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "mcf/errors.h"

namespace mcf {

BigInt floor_div(const BigInt& a, const BigInt& b) {
  if (b == 0) throw DivisionByZero("floor_div: zero divisor");
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

bool same_strict_sign(std::span<const BigInt> values) {
  if (values.empty()) throw std::invalid_argument("same_strict_sign: empty list");
  const int first = sgn(values.front());
  if (first == 0) return false;
  return std::all_of(values.begin(), values.end(),
                     [first](const BigInt& v) { return sgn(v) == first; });
}

Rational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw DivisionByZero("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

BigInt floor(const Rational& q) { return floor_div(q.get_num(), q.get_den()); }

BigInt ceil(const Rational& q) {
  BigInt r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

std::size_t bit_length(const BigInt& x) {
  if (x == 0) return 0;
  return mpz_sizeinbase(x.get_mpz_t(), 2);
}

std::string to_string(const Tuple& t) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) os << ',';
    os << t[i];
  }
  os << ')';
  return os.str();
}

Interval::Interval(const Rational& point) : lo_(point), hi_(point) {}

Interval::Interval(Rational lo, Rational hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (lo_ > hi_) throw std::invalid_argument("Interval: lo > hi");
}

Interval Interval::rounded_outward(std::size_t frac_bits) const {
  if (is_point()) return *this;
  BigInt scale = 1;
  scale <<= frac_bits;
  const BigInt lo_num = floor(Rational(lo_ * scale));
  const BigInt hi_num = ceil(Rational(hi_ * scale));
  return Interval(make_rational(lo_num, scale), make_rational(hi_num, scale));
}

Interval operator+(const Interval& a, const Interval& b) {
  return Interval(a.lo_ + b.lo_, a.hi_ + b.hi_);
}

Interval operator-(const Interval& a, const Interval& b) {
  return Interval(a.lo_ - b.hi_, a.hi_ - b.lo_);
}

Interval operator*(const Interval& a, const Interval& b) {
  const Rational p[4] = {a.lo_ * b.lo_, a.lo_ * b.hi_, a.hi_ * b.lo_, a.hi_ * b.hi_};
  const auto [mn, mx] = std::minmax_element(std::begin(p), std::end(p));
  return Interval(*mn, *mx);
}

Interval operator/(const Interval& a, const Interval& b) {
  if (b.contains_zero()) throw DivisionByZero("interval division by an interval containing 0");
  const Rational inv_lo = 1 / b.hi_;
  const Rational inv_hi = 1 / b.lo_;
  return a * Interval(inv_lo, inv_hi);
}

Interval operator*(const BigInt& k, const Interval& a) {
  if (k >= 0) return Interval(a.lo_ * k, a.hi_ * k);
  return Interval(a.hi_ * k, a.lo_ * k);
}

std::ostream& operator<<(std::ostream& os, const Interval& x) {
  return os << '[' << x.lo() << ", " << x.hi() << ']';
}

std::optional<BigInt> certified_floor(const Interval& x) {
  BigInt lo = floor(x.lo());
  if (lo != floor(x.hi())) return std::nullopt;
  return lo;
}

BigInt interval_floor(const Interval& x, const std::function<Interval(std::size_t)>& refine,
                      const RefineBudget& budget) {
  if (auto f = certified_floor(x)) return *f;
  for (std::size_t bits = budget.initial_bits; bits <= budget.max_bits; bits *= 2) {
    if (auto f = certified_floor(refine(bits))) return *f;
  }
  throw PrecisionExhausted("interval_floor: floor undecided at " +
                           std::to_string(budget.max_bits) + " bits");
}

}  // namespace mcf

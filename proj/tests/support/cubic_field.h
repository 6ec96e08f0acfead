#pragma once

// Exact arithmetic in Q(t), t^3 = d, used as an independent oracle: complete
// quotients stay exact field elements and only the final floor is taken
// numerically (mpf Newton iteration with a margin check).

#include <gmpxx.h>

#include <array>
#include <stdexcept>
#include <vector>

#include "mcf/exactnum.h"
#include "mcf/matrix.h"

namespace mcf::testing {

class CubicElem {
 public:
  CubicElem(long d, mpq_class a = 0, mpq_class b = 0, mpq_class c = 0) : d_(d), v_{a, b, c} {}

  static CubicElem t(long d) { return CubicElem(d, 0, 1, 0); }
  static CubicElem t2(long d) { return CubicElem(d, 0, 0, 1); }

  CubicElem operator+(const CubicElem& o) const {
    return {d_, v_[0] + o.v_[0], v_[1] + o.v_[1], v_[2] + o.v_[2]};
  }
  CubicElem operator-(const CubicElem& o) const {
    return {d_, v_[0] - o.v_[0], v_[1] - o.v_[1], v_[2] - o.v_[2]};
  }
  CubicElem operator*(const CubicElem& o) const {
    const auto& [a, b, c] = v_;
    const auto& [e, f, g] = o.v_;
    // t^3 = d, t^4 = d t
    return {d_, a * e + d_ * (b * g + c * f), a * f + b * e + d_ * c * g, a * g + b * f + c * e};
  }
  CubicElem scaled(const mpq_class& k) const { return {d_, k * v_[0], k * v_[1], k * v_[2]}; }

  CubicElem inverse() const {
    const auto& [a, b, c] = v_;
    const mpq_class n = a * a * a + d_ * b * b * b + d_ * d_ * c * c * c - 3 * d_ * a * b * c;
    if (n == 0) throw std::domain_error("CubicElem: inverse of zero");
    return CubicElem(d_, a * a - d_ * b * c, d_ * c * c - a * b, b * b - a * c).scaled(1 / n);
  }
  CubicElem operator/(const CubicElem& o) const { return *this * o.inverse(); }

  long d() const { return d_; }
  bool is_rational() const { return v_[1] == 0 && v_[2] == 0; }
  bool is_zero() const { return is_rational() && v_[0] == 0; }

  mpz_class floor() const {
    if (is_rational()) {
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), v_[0].get_num_mpz_t(), v_[0].get_den_mpz_t());
      return q;
    }
    for (unsigned prec = 256; prec <= (1u << 16); prec *= 2) {
      mpf_class dd(d_, prec), t(1.0, prec), three(3, prec);
      // Newton on t^3 - d from above converges monotonically.
      t = dd > 1 ? dd : mpf_class(1, prec);
      for (unsigned it = 0; it < 4 * prec; ++it) {
        mpf_class next(0, prec);
        next = t - (t * t * t - dd) / (three * t * t);
        if (next == t) break;
        t = next;
      }
      mpf_class val(0, prec);
      val = mpf_class(v_[0], prec) + mpf_class(v_[1], prec) * t + mpf_class(v_[2], prec) * t * t;
      mpf_class fl(0, prec);
      mpf_floor(fl.get_mpf_t(), val.get_mpf_t());
      mpf_class margin(1, prec);
      mpf_div_2exp(margin.get_mpf_t(), margin.get_mpf_t(), prec / 2);
      if (val - fl > margin && fl + 1 - val > margin) return mpz_class(fl);
    }
    throw std::runtime_error("CubicElem: floor undecided");
  }

 private:
  long d_;
  std::array<mpq_class, 3> v_;
};

// Plain JPA on exact field elements.
inline std::vector<Tuple> cubic_jpa(std::vector<CubicElem> x, std::size_t n) {
  std::vector<Tuple> out;
  const std::size_t m = x.size();
  for (std::size_t k = 0; k < n; ++k) {
    Tuple a;
    for (const auto& v : x) a.push_back(v.floor());
    out.push_back(a);
    if (k + 1 == n) break;
    std::vector<CubicElem> fr;
    for (std::size_t i = 0; i < m; ++i) fr.push_back(x[i] - CubicElem(x[i].d(), mpq_class(a[i])));
    std::vector<CubicElem> next;
    next.push_back(fr[m - 1].inverse());
    for (std::size_t i = 1; i < m; ++i) next.push_back(fr[i - 1] / fr[m - 1]);
    x = std::move(next);
  }
  return out;
}

// (L^(1)/L^(m+1), ..., L^(m)/L^(m+1)) applied to (t, t^2), exactly.
inline std::vector<CubicElem> cubic_moebius(long d, const Matrix& c) {
  const std::size_t m = c.rows() - 1;
  std::vector<CubicElem> x = {CubicElem::t(d), CubicElem::t2(d)};
  x.resize(m, CubicElem(d));
  auto form = [&](std::size_t row) {
    CubicElem acc(d, mpq_class(c(row, m)));
    for (std::size_t j = 0; j < m; ++j) acc = acc + x[j].scaled(mpq_class(c(row, j)));
    return acc;
  };
  const CubicElem den = form(m);
  std::vector<CubicElem> out;
  for (std::size_t i = 0; i < m; ++i) out.push_back(form(i) / den);
  return out;
}

}  // namespace mcf::testing

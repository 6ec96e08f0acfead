#include "mcf/mcf.h"

#include <stdexcept>
#include <utility>

#include "mcf/errors.h"

namespace mcf {

namespace {

std::size_t common_dimension(const std::vector<Tuple>& a, const std::vector<Tuple>& b) {
  std::size_t m = 0;
  for (const auto* list : {&a, &b})
    for (const auto& t : *list) {
      if (t.empty()) throw std::invalid_argument("Mcf: empty quotient tuple");
      if (m == 0) m = t.size();
      if (t.size() != m) throw std::invalid_argument("Mcf: tuples of different dimension");
    }
  return m;
}

std::vector<Tuple> to_steps(const std::vector<std::vector<BigInt>>& comps) {
  if (comps.empty()) return {};
  const std::size_t len = comps.front().size();
  for (const auto& c : comps)
    if (c.size() != len)
      throw std::invalid_argument("Mcf: components have different lengths (lockstep violated)");
  std::vector<Tuple> steps(len, Tuple(comps.size()));
  for (std::size_t i = 0; i < comps.size(); ++i)
    for (std::size_t n = 0; n < len; ++n) steps[n][i] = comps[i][n];
  return steps;
}

}  // namespace

Mcf Mcf::finite(std::vector<Tuple> steps) {
  Mcf f;
  f.m_ = common_dimension(steps, {});
  f.pre_ = std::move(steps);
  f.label_ = "finite";
  return f;
}

Mcf Mcf::periodic(std::vector<Tuple> preperiod, std::vector<Tuple> period) {
  Mcf f;
  f.m_ = common_dimension(preperiod, period);
  f.pre_ = std::move(preperiod);
  f.period_ = std::move(period);
  f.label_ = f.period_.empty() ? "finite" : "periodic";
  return f;
}

Mcf Mcf::generated(std::size_t m, Generator gen, std::string label) {
  if (m == 0) throw std::invalid_argument("Mcf: dimension must be >= 1");
  Mcf f;
  f.m_ = m;
  f.gen_ = std::make_shared<const Generator>(std::move(gen));
  f.label_ = std::move(label);
  return f;
}

Mcf Mcf::from_components(const std::vector<std::vector<BigInt>>& preperiod,
                         const std::vector<std::vector<BigInt>>& period) {
  if (!period.empty() && period.size() != preperiod.size())
    throw std::invalid_argument("Mcf: preperiod and period have different dimension");
  Mcf f = periodic(to_steps(preperiod), to_steps(period));
  if (f.m_ == 0) f.m_ = preperiod.size();
  return f;
}

std::optional<Tuple> Mcf::at(std::size_t n) const {
  n += offset_;
  if (gen_) {
    auto t = (*gen_)(n);
    if (t && t->size() != m_) throw std::logic_error("Mcf generator returned wrong dimension");
    return t;
  }
  if (n < pre_.size()) return pre_[n];
  if (period_.empty()) return std::nullopt;
  return period_[(n - pre_.size()) % period_.size()];
}

std::vector<Tuple> Mcf::prefix(std::size_t n) const {
  std::vector<Tuple> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    auto t = at(k);
    if (!t) break;
    out.push_back(std::move(*t));
  }
  return out;
}

Mcf Mcf::shifted(std::size_t k) const {
  Mcf f = *this;
  f.offset_ += k;
  return f;
}

Matrix step_matrix(const Tuple& a) {
  const std::size_t m = a.size();
  Matrix s(m + 1, m + 1);
  for (std::size_t i = 0; i < m; ++i) {
    s(i, 0) = a[i];
    s(i, i + 1) = 1;
  }
  s(m, 0) = 1;
  return s;
}

Matrix output_matrix(const Tuple& b) {
  const std::size_t m = b.size();
  Matrix o(m + 1, m + 1);
  o(0, m) = 1;
  for (std::size_t i = 0; i < m; ++i) {
    o(i + 1, i) = 1;
    o(i + 1, m) = -b[i];
  }
  return o;
}

Matrix convergents(const Mcf& mcf, std::size_t n) {
  Matrix p = Matrix::identity(mcf.dimension() + 1);
  for (std::size_t k = 0; k < n; ++k) {
    auto t = mcf.at(k);
    if (!t) throw InputExhausted(mcf.label());
    p = p * step_matrix(*t);
  }
  return p;
}

std::vector<Violation> check_admissible(const Mcf& mcf, std::size_t n) {
  std::vector<Violation> out;
  for (std::size_t k = 1; k < n; ++k) {
    auto t = mcf.at(k);
    if (!t) break;
    const Tuple& a = *t;
    if (a[0] < 1) out.push_back({k, 1, "a^(1) = " + a[0].get_str() + " < 1"});
    for (std::size_t i = 1; i < a.size(); ++i) {
      if (a[i] < 0)
        out.push_back({k, i + 1, "a^(" + std::to_string(i + 1) + ") = " + a[i].get_str() + " < 0"});
      else if (a[i] > a[0])
        out.push_back({k, i + 1,
                       "a^(" + std::to_string(i + 1) + ") = " + a[i].get_str() + " > a^(1) = " +
                           a[0].get_str()});
    }
  }
  return out;
}

std::vector<Rational> eval_convergent(const Matrix& cm) {
  const std::size_t m = cm.rows() - 1;
  const BigInt& den = cm(m, 0);
  if (den == 0) throw DivisionByZero("convergent denominator A^(m+1) is zero");
  std::vector<Rational> out;
  out.reserve(m);
  for (std::size_t i = 0; i < m; ++i) out.push_back(make_rational(cm(i, 0), den));
  return out;
}

}  // namespace mcf

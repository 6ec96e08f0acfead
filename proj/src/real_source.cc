#include "mcf/real_source.h"

#include <algorithm>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "mcf/errors.h"

namespace mcf {

namespace {

class RationalSource final : public RealSource {
 public:
  explicit RationalSource(std::vector<Rational> v) : values_(std::move(v)) {
    if (values_.empty()) throw std::invalid_argument("rational source needs >= 1 component");
  }
  std::size_t dimension() const override { return values_.size(); }
  std::vector<Interval> enclose(std::size_t) const override {
    std::vector<Interval> out;
    for (const auto& v : values_) out.emplace_back(v);
    return out;
  }
  std::string describe() const override {
    std::ostringstream os;
    os << "rational(";
    for (std::size_t i = 0; i < values_.size(); ++i) os << (i ? "," : "") << values_[i];
    os << ')';
    return os.str();
  }
  bool is_exact() const override { return true; }

 private:
  std::vector<Rational> values_;
};

class RootPowerSource final : public RealSource {
 public:
  RootPowerSource(BigInt d, unsigned k, std::size_t m) : d_(std::move(d)), k_(k), m_(m) {
    if (d_ <= 0) throw std::invalid_argument("root source needs d > 0");
    if (k_ < 2) throw std::invalid_argument("root source needs k >= 2");
    if (m_ == 0) throw std::invalid_argument("root source needs m >= 1");
  }
  std::size_t dimension() const override { return m_; }
  std::vector<Interval> enclose(std::size_t bits) const override {
    std::vector<Interval> out;
    BigInt power = 1;
    for (std::size_t j = 1; j <= m_; ++j) {
      power *= d_;
      BigInt scaled = power << static_cast<mp_bitcnt_t>(k_ * bits);
      BigInt r;
      const bool exact = mpz_root(r.get_mpz_t(), scaled.get_mpz_t(), k_) != 0;
      BigInt den = BigInt(1) << static_cast<mp_bitcnt_t>(bits);
      if (exact)
        out.emplace_back(make_rational(r, den));
      else
        out.emplace_back(make_rational(r, den), make_rational(r + 1, den));
    }
    return out;
  }
  std::string describe() const override {
    std::ostringstream os;
    os << "root" << k_ << "(" << d_ << ")^1.." << m_;
    return os.str();
  }

 private:
  BigInt d_;
  unsigned k_;
  std::size_t m_;
};

class McfSource final : public RealSource {
 public:
  McfSource(Mcf mcf, std::size_t max_steps)
      : mcf_(std::move(mcf)),
        max_steps_(max_steps),
        product_(Matrix::identity(mcf_.dimension() + 1)) {}

  std::size_t dimension() const override { return mcf_.dimension(); }

  std::vector<Interval> enclose(std::size_t bits) const override {
    std::lock_guard lock(mu_);
    const Rational target = make_rational(1, BigInt(1) << static_cast<mp_bitcnt_t>(bits));
    for (;;) {
      if (ended_) return exact_value();
      if (auto hull = column_hull()) {
        bool narrow = true;
        for (const auto& iv : *hull) narrow = narrow && iv.width() <= target;
        if (narrow || steps_ >= max_steps_) return *hull;
      } else if (steps_ >= max_steps_) {
        throw PrecisionExhausted("mcf source: no sign-definite convergent hull within " +
                                 std::to_string(max_steps_) + " steps");
      }
      auto t = mcf_.at(steps_);
      if (!t) {
        ended_ = true;
        continue;
      }
      product_ = product_ * step_matrix(*t);
      ++steps_;
    }
  }

  std::string describe() const override { return "mcf(" + mcf_.label() + ")"; }

 private:
  std::vector<Interval> exact_value() const {
    std::vector<Interval> out;
    for (const auto& q : eval_convergent(product_)) out.emplace_back(q);
    return out;
  }

  std::optional<std::vector<Interval>> column_hull() const {
    const std::size_t m = mcf_.dimension();
    if (!same_strict_sign(product_.row(m))) return std::nullopt;
    std::vector<Interval> out;
    for (std::size_t i = 0; i < m; ++i) {
      Rational lo, hi;
      for (std::size_t j = 0; j <= m; ++j) {
        Rational q = make_rational(product_(i, j), product_(m, j));
        if (j == 0 || q < lo) lo = q;
        if (j == 0 || q > hi) hi = q;
      }
      out.emplace_back(lo, hi);
    }
    return out;
  }

  Mcf mcf_;
  std::size_t max_steps_;
  mutable std::mutex mu_;
  mutable Matrix product_;
  mutable std::size_t steps_ = 0;
  mutable bool ended_ = false;
};

enum class Attempt { Ok, Ambiguous, Terminated };

struct JpaRun {
  Attempt status = Attempt::Ok;
  std::vector<Tuple> steps;
  std::vector<Interval> tail;
};

// One pass at fixed precision. With want_tail the complete quotient after n
// steps is returned as well.
JpaRun jpa_attempt(std::vector<Interval> x, std::size_t n, std::size_t bits, bool exact,
                   bool want_tail) {
  JpaRun run;
  const std::size_t m = x.size();
  for (std::size_t k = 0; k < n; ++k) {
    Tuple a(m);
    for (std::size_t i = 0; i < m; ++i) {
      auto f = certified_floor(x[i]);
      if (!f) {
        run.status = Attempt::Ambiguous;
        return run;
      }
      a[i] = *f;
    }
    run.steps.push_back(a);
    if (k + 1 == n && !want_tail) break;
    Interval den = x[m - 1] - Interval::from_integer(a[m - 1]);
    if (den.contains_zero()) {
      run.status = den.is_point() ? Attempt::Terminated : Attempt::Ambiguous;
      return run;
    }
    std::vector<Interval> next(m);
    next[0] = Interval(Rational(1)) / den;
    for (std::size_t i = 1; i < m; ++i)
      next[i] = (x[i - 1] - Interval::from_integer(a[i - 1])) / den;
    if (!exact)
      for (auto& v : next) v = v.rounded_outward(bits);
    x = std::move(next);
  }
  if (want_tail) run.tail = std::move(x);
  return run;
}

// Escalates precision from start_bits until the pass succeeds; returns the
// run and the precision that worked.
std::pair<JpaRun, std::size_t> jpa_escalate(const SourcePtr& source, std::size_t n,
                                            std::size_t start_bits, const JpaOptions& opts,
                                            bool want_tail) {
  std::size_t bits = std::max<std::size_t>(start_bits, 1);
  for (;;) {
    JpaRun run = jpa_attempt(source->enclose(bits), n, bits, source->is_exact(), want_tail);
    if (run.status == Attempt::Terminated) throw Terminated(std::move(run.steps));
    if (run.status == Attempt::Ok) return {std::move(run), bits};
    if (source->is_exact() || bits >= opts.max_bits)
      throw PrecisionExhausted("jpa: floor of step " + std::to_string(run.steps.size()) + " of " +
                               source->describe() + " undecided at " + std::to_string(bits) +
                               " bits");
    bits = std::min(bits * 2, opts.max_bits);
  }
}

std::vector<BigInt> split_ints(const std::string& s, char sep) {
  std::vector<BigInt> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.emplace_back(item);
  return out;
}

}  // namespace

SourcePtr rational_source(std::vector<Rational> values) {
  for (auto& v : values) v.canonicalize();
  return std::make_shared<RationalSource>(std::move(values));
}

SourcePtr root_power_source(const BigInt& d, unsigned k, std::size_t m) {
  return std::make_shared<RootPowerSource>(d, k, m);
}

SourcePtr mcf_source(Mcf mcf, std::size_t max_steps) {
  return std::make_shared<McfSource>(std::move(mcf), max_steps);
}

SourcePtr parse_source(const std::string& spec, std::size_t m) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("source spec needs kind:value");
  const std::string kind = spec.substr(0, colon);
  const std::string rest = spec.substr(colon + 1);
  try {
    if (kind == "rational") {
      std::vector<Rational> vals;
      std::stringstream ss(rest);
      std::string item;
      while (std::getline(ss, item, ',')) {
        Rational q(item);
        if (q.get_den() == 0) throw std::invalid_argument("zero denominator");
        vals.push_back(q);
      }
      if (vals.size() != m)
        throw std::invalid_argument("rational source has " + std::to_string(vals.size()) +
                                    " components, expected " + std::to_string(m));
      return rational_source(std::move(vals));
    }
    if (kind == "sqrt") return root_power_source(BigInt(rest), 2, m);
    if (kind == "cbrt") return root_power_source(BigInt(rest), 3, m);
    if (kind == "root") {
      auto parts = split_ints(rest, ':');
      if (parts.size() != 2) throw std::invalid_argument("root source is root:K:D");
      return root_power_source(parts[1], static_cast<unsigned>(parts[0].get_ui()), m);
    }
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument("bad source '" + spec + "': " + e.what());
  }
  throw std::invalid_argument("unknown source kind '" + kind + "'");
}

std::vector<Tuple> jpa_expand(const SourcePtr& source, std::size_t n, const JpaOptions& opts) {
  if (n == 0) return {};
  return jpa_escalate(source, n, opts.initial_bits, opts, false).first.steps;
}

std::vector<Interval> jpa_complete_quotient(const SourcePtr& source, std::size_t n,
                                            std::size_t bits, const JpaOptions& opts) {
  return jpa_escalate(source, n, bits, opts, true).first.tail;
}

Mcf jpa_stream(const SourcePtr& source, const JpaOptions& opts) {
  struct State {
    std::mutex mu;
    std::vector<Tuple> cache;
    bool ended = false;
    std::size_t bits;
  };
  auto st = std::make_shared<State>();
  st->bits = opts.initial_bits;
  auto gen = [source, opts, st](std::size_t n) -> std::optional<Tuple> {
    std::lock_guard lock(st->mu);
    if (n >= st->cache.size() && !st->ended) {
      const std::size_t want = std::max({n + 1, 2 * st->cache.size(), std::size_t{16}});
      try {
        auto [run, bits] = jpa_escalate(source, want, st->bits, opts, false);
        st->cache = std::move(run.steps);
        st->bits = bits;
      } catch (const Terminated& t) {
        st->cache = t.steps();
        st->ended = true;
      }
    }
    if (n < st->cache.size()) return st->cache[n];
    return std::nullopt;
  };
  return Mcf::generated(source->dimension(), std::move(gen), "jpa:" + source->describe());
}

}  // namespace mcf

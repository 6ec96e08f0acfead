#include "mcf/oracle.h"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "mcf/errors.h"

namespace mcf {

namespace {

// Shared refinement loop for the derived sources: evaluate at `bits`, and
// retry at twice the precision while some denominator straddles zero.
template <class Eval>
std::vector<Interval> enclose_ratio(std::size_t bits, const JpaOptions& opts, bool exact,
                                    const std::string& what, Eval eval) {
  std::size_t b = std::max<std::size_t>(bits, 1);
  for (;;) {
    auto [nums, den] = eval(b);
    if (!den.contains_zero()) {
      std::vector<Interval> out;
      out.reserve(nums.size());
      for (auto& n : nums) {
        Interval q = n / den;
        out.push_back(exact ? q : q.rounded_outward(b + 2));
      }
      return out;
    }
    if (den.is_point()) throw DivisionByZero(what + ": denominator form is exactly zero");
    if (exact || b >= opts.max_bits)
      throw PrecisionExhausted(what + ": denominator not separated from zero at " +
                               std::to_string(b) + " bits");
    b = std::min(b * 2, opts.max_bits);
  }
}

class MoebiusImage final : public RealSource {
 public:
  MoebiusImage(SourcePtr x, Matrix c, JpaOptions opts)
      : x_(std::move(x)), c_(std::move(c)), opts_(opts) {
    if (!c_.is_square() || c_.rows() != x_->dimension() + 1)
      throw std::invalid_argument("eval_moebius: matrix size does not match source dimension");
  }
  std::size_t dimension() const override { return x_->dimension(); }
  bool is_exact() const override { return x_->is_exact(); }
  std::string describe() const override {
    return "moebius(" + x_->describe() + ", " + c_.to_string() + ")";
  }
  std::vector<Interval> enclose(std::size_t bits) const override {
    const std::size_t m = dimension();
    // Entries of C scale the enclosure width, so ask for a few extra bits.
    const std::size_t pad = c_.max_entry_bits() + 4;
    return enclose_ratio(bits, opts_, is_exact(), "eval_moebius", [&](std::size_t b) {
      const auto x = x_->enclose(b + pad);
      auto form = [&](std::size_t row) {
        Interval acc = Interval::from_integer(c_(row, m));
        for (std::size_t j = 0; j < m; ++j)
          if (c_(row, j) != 0) acc = acc + c_(row, j) * x[j];
        return acc;
      };
      std::vector<Interval> nums;
      for (std::size_t i = 0; i < m; ++i) nums.push_back(form(i));
      return std::make_pair(std::move(nums), form(m));
    });
  }

 private:
  SourcePtr x_;
  Matrix c_;
  JpaOptions opts_;
};

class BilinearImage final : public RealSource {
 public:
  BilinearImage(SourcePtr x, SourcePtr y, FormFamily f, JpaOptions opts)
      : x_(std::move(x)), y_(std::move(y)), f_(std::move(f)), opts_(opts) {
    const std::size_t m = x_->dimension();
    if (y_->dimension() != m || f_.size() != m + 1)
      throw std::invalid_argument("eval_bilinear: dimensions do not match");
    for (const auto& c : f_)
      if (c.rows() != m + 1 || c.cols() != m + 1)
        throw std::invalid_argument("eval_bilinear: form matrices must be (m+1)x(m+1)");
  }
  std::size_t dimension() const override { return x_->dimension(); }
  bool is_exact() const override { return x_->is_exact() && y_->is_exact(); }
  std::string describe() const override {
    return "bilinear(" + x_->describe() + ", " + y_->describe() + ")";
  }
  std::vector<Interval> enclose(std::size_t bits) const override {
    const std::size_t m = dimension();
    std::size_t pad = 8;
    for (const auto& c : f_) pad = std::max(pad, c.max_entry_bits() + 8);
    return enclose_ratio(bits, opts_, is_exact(), "eval_bilinear", [&](std::size_t b) {
      auto x = x_->enclose(b + pad);
      auto y = y_->enclose(b + pad);
      x.emplace_back(Rational(1));
      y.emplace_back(Rational(1));
      auto form = [&](const Matrix& c) {
        Interval acc(Rational(0));
        for (std::size_t j = 0; j <= m; ++j)
          for (std::size_t l = 0; l <= m; ++l)
            if (c(j, l) != 0) acc = acc + c(j, l) * (x[j] * y[l]);
        return acc;
      };
      std::vector<Interval> nums;
      for (std::size_t i = 0; i < m; ++i) nums.push_back(form(f_[i]));
      return std::make_pair(std::move(nums), form(f_[m]));
    });
  }

 private:
  SourcePtr x_;
  SourcePtr y_;
  FormFamily f_;
  JpaOptions opts_;
};

}  // namespace

SourcePtr eval_moebius(SourcePtr x, Matrix c, const JpaOptions& opts) {
  return std::make_shared<MoebiusImage>(std::move(x), std::move(c), opts);
}

SourcePtr eval_bilinear(SourcePtr x, SourcePtr y, FormFamily family, const JpaOptions& opts) {
  return std::make_shared<BilinearImage>(std::move(x), std::move(y), std::move(family), opts);
}

VerifyReport verify_prefix(const std::vector<Tuple>& outputs, const SourcePtr& source,
                           const JpaOptions& opts) {
  VerifyReport rep;
  std::size_t n = outputs.size();
  // Try the whole prefix, then back off so that a late precision failure
  // still certifies (and compares) as much as possible.
  while (n > 0) {
    try {
      rep.expected = jpa_expand(source, n, opts);
      break;
    } catch (const Terminated& t) {
      rep.expected = t.steps();
      break;
    } catch (const PrecisionExhausted& e) {
      if (rep.message.empty()) rep.message = e.what();
      rep.undecidable = true;
      n /= 2;
    }
  }
  const std::size_t common = std::min(rep.expected.size(), outputs.size());
  for (std::size_t k = 0; k < common; ++k) {
    if (rep.expected[k] != outputs[k]) {
      rep.mismatch_index = k;
      rep.undecidable = false;
      std::ostringstream os;
      os << "mismatch at index " << k << ": engine " << to_string(outputs[k]) << ", oracle "
         << to_string(rep.expected[k]);
      rep.message = os.str();
      return rep;
    }
  }
  if (rep.expected.size() < outputs.size() && !rep.undecidable) {
    // The oracle expansion terminated before the engine stopped emitting.
    rep.mismatch_index = rep.expected.size();
    rep.message = "oracle expansion terminated after " + std::to_string(rep.expected.size()) +
                  " tuples";
    return rep;
  }
  if (rep.undecidable) {
    rep.message = "undecidable at budget after " + std::to_string(common) +
                  " agreeing tuples: " + rep.message;
    return rep;
  }
  rep.agreed = true;
  rep.message = "agreement through " + std::to_string(outputs.size()) + " tuples";
  return rep;
}

const char* to_string(BracketCheck c) {
  switch (c) {
    case BracketCheck::Inside: return "inside";
    case BracketCheck::Outside: return "outside";
    case BracketCheck::Undecided: return "undecided";
  }
  return "?";
}

std::optional<std::vector<std::pair<Rational, Rational>>> ratio_bracket(
    const std::vector<std::vector<BigInt>>& numerators, const std::vector<BigInt>& denominators) {
  if (!same_strict_sign(denominators)) return std::nullopt;
  std::vector<std::pair<Rational, Rational>> out;
  for (const auto& num : numerators) {
    if (num.size() != denominators.size())
      throw std::invalid_argument("ratio_bracket: size mismatch");
    Rational lo = make_rational(num[0], denominators[0]);
    Rational hi = lo;
    for (std::size_t k = 1; k < num.size(); ++k) {
      Rational q = make_rational(num[k], denominators[k]);
      if (q < lo) lo = q;
      if (q > hi) hi = q;
    }
    out.emplace_back(std::move(lo), std::move(hi));
  }
  return out;
}

BracketCheck check_in_bracket(const SourcePtr& image, std::size_t outputs,
                              const std::vector<std::pair<Rational, Rational>>& bracket,
                              const JpaOptions& opts) {
  for (std::size_t bits = opts.initial_bits;; bits = std::min(bits * 2, opts.max_bits)) {
    std::vector<Interval> y;
    try {
      y = jpa_complete_quotient(image, outputs, bits, opts);
    } catch (const PrecisionExhausted&) {
      return BracketCheck::Undecided;
    } catch (const Terminated&) {
      return BracketCheck::Undecided;
    }
    bool inside = true;
    for (std::size_t i = 0; i < bracket.size(); ++i) {
      const auto& [lo, hi] = bracket[i];
      if (y[i].hi() < lo || y[i].lo() > hi) return BracketCheck::Outside;
      inside = inside && lo <= y[i].lo() && y[i].hi() <= hi;
    }
    if (inside) return BracketCheck::Inside;
    if (bits >= opts.max_bits) return BracketCheck::Undecided;
  }
}

}  // namespace mcf

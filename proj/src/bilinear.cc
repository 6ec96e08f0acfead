#include "mcf/bilinear.h"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "mcf/errors.h"

namespace mcf {

const char* to_string(Side s) { return s == Side::X ? "x" : "y"; }

FormFamily sum_forms(std::size_t m) {
  FormFamily f(m + 1, Matrix(m + 1, m + 1));
  for (std::size_t i = 0; i < m; ++i) {
    f[i](i, m) = 1;
    f[i](m, i) = 1;
  }
  f[m](m, m) = 1;
  return f;
}

FormFamily product_forms(std::size_t m) {
  FormFamily f(m + 1, Matrix(m + 1, m + 1));
  for (std::size_t i = 0; i < m; ++i) f[i](i, i) = 1;
  f[m](m, m) = 1;
  return f;
}

namespace {

void validate(const FormFamily& f) {
  if (f.size() < 2) throw std::invalid_argument("form family needs m+1 >= 2 matrices");
  for (const auto& c : f)
    if (c.rows() != f.size() || c.cols() != f.size())
      throw std::invalid_argument("every form matrix must be (m+1)x(m+1)");
}

}  // namespace

BilinearState::BilinearState(FormFamily family, Mcf x, Mcf y)
    : family_(std::move(family)), x_(std::move(x)), y_(std::move(y)), has_input_(true) {
  validate(family_);
  if (x_.dimension() != dimension() || y_.dimension() != dimension())
    throw std::invalid_argument("input dimension does not match form family");
}

BilinearState::BilinearState(FormFamily family) : family_(std::move(family)) {
  validate(family_);
}

FormFamily BilinearState::bracket() const {
  if (dimension() != 1) return family_;
  const Matrix r{{1, 1}, {0, 1}};
  const Matrix rt = r.transposed();
  FormFamily out;
  for (const auto& c : family_) out.push_back(rt * c * r);
  return out;
}

std::optional<Tuple> BilinearState::can_output() const {
  const FormFamily b = bracket();
  const std::size_t m = dimension();
  const Matrix& den = b[m];
  if (!same_strict_sign(den.entries())) return std::nullopt;
  Tuple out(m);
  for (std::size_t i = 0; i < m; ++i) {
    const auto& num = b[i].entries();
    const auto& dv = den.entries();
    const BigInt f = floor_div(num[0], dv[0]);
    for (std::size_t k = 1; k < num.size(); ++k)
      if (floor_div(num[k], dv[k]) != f) return std::nullopt;
    out[i] = f;
  }
  return out;
}

void BilinearState::absorb_input() {
  std::optional<Tuple> a;
  if (has_input_) a = active_ == Side::X ? x_.at(tx_) : y_.at(ty_);
  if (!a) throw InputExhausted(to_string(active_));
  absorb_tuple(*a);
}

void BilinearState::absorb_tuple(const Tuple& a) {
  if (a.size() != dimension()) throw std::invalid_argument("tuple dimension mismatch");
  const Matrix s = step_matrix(a).transposed();
  for (auto& c : family_) c = (s * c).transposed();
  if (active_ == Side::X) {
    ++tx_;
    active_ = Side::Y;
  } else {
    ++ty_;
    active_ = Side::X;
  }
}

void BilinearState::emit_output(const Tuple& applied, const Tuple& recorded) {
  const std::size_t m = dimension();
  if (applied.size() != m || recorded.size() != m)
    throw std::invalid_argument("output tuple dimension mismatch");
  FormFamily next;
  next.reserve(m + 1);
  next.push_back(family_[m]);
  for (std::size_t i = 0; i < m; ++i) next.push_back(family_[i] - applied[i] * family_[m]);
  family_ = std::move(next);
  ++s_;
  emitted_.push_back(recorded);
}

void BilinearState::shift(const Tuple& d) {
  const std::size_t m = dimension();
  if (d.size() != m) throw std::invalid_argument("shift dimension mismatch");
  for (std::size_t i = 0; i < m; ++i)
    if (d[i] != 0) family_[i] -= d[i] * family_[m];
}

void BilinearState::negate() {
  for (auto& c : family_) c = -c;
}

std::size_t BilinearState::max_entry_bits() const {
  std::size_t best = 0;
  for (const auto& c : family_) best = std::max(best, c.max_entry_bits());
  return best;
}

RunResult run_bilinear(const Mcf& x, const Mcf& y, const FormFamily& family,
                       const RunLimits& limits, const BilinearObserver& observer) {
  BilinearState st(family, x, y);
  RunResult res;
  auto record = [&](StepKind kind) {
    res.log.steps.push_back({kind, st.inputs(), st.outputs(), st.max_entry_bits()});
    if (kind == StepKind::Output) res.log.inputs_at_output.push_back(st.inputs());
    if (observer) observer(st, kind);
  };
  auto absorb = [&]() -> bool {
    try {
      st.absorb_input();
    } catch (const InputExhausted& e) {
      res.stop = StopReason::InputExhausted;
      res.exhausted_side = e.side();
      return false;
    }
    record(StepKind::Input);
    return true;
  };

  bool live = limits.max_outputs > 0 && limits.max_steps > 0;
  if (live) live = absorb();
  if (live && st.transitions() < limits.max_steps) live = absorb();
  while (live && st.outputs() < limits.max_outputs && st.transitions() < limits.max_steps) {
    if (auto d = st.can_output()) {
      st.emit_output(*d);
      record(StepKind::Output);
    } else {
      live = absorb();
    }
  }
  res.outputs = st.emitted();
  if (res.stop != StopReason::InputExhausted)
    res.stop = st.outputs() >= limits.max_outputs ? StopReason::MaxOutputs : StopReason::GuardHit;
  return res;
}

}  // namespace mcf

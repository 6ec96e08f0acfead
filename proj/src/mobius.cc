#include "mcf/mobius.h"

#include <stdexcept>
#include <utility>

#include "mcf/errors.h"

namespace mcf {

const char* to_string(StepKind k) {
  switch (k) {
    case StepKind::Input: return "in";
    case StepKind::Output: return "out";
    case StepKind::Partial: return "partial";
  }
  return "?";
}

const char* to_string(StopReason r) {
  switch (r) {
    case StopReason::MaxOutputs: return "max-outputs";
    case StopReason::GuardHit: return "guard-hit";
    case StopReason::InputExhausted: return "input-exhausted";
  }
  return "?";
}

namespace {

void validate(const Matrix& c) {
  if (!c.is_square() || c.rows() < 2)
    throw std::invalid_argument("Moebius matrix must be (m+1)x(m+1) with m >= 1");
}

}  // namespace

MobiusState::MobiusState(Mcf input, Matrix c, bool allow_singular)
    : input_(std::move(input)), has_input_(true), c_(std::move(c)) {
  validate(c_);
  if (input_.dimension() != dimension())
    throw std::invalid_argument("input dimension " + std::to_string(input_.dimension()) +
                                " does not match matrix dimension " + std::to_string(dimension()));
  abs_det_ = abs(c_.determinant());
  if (abs_det_ == 0 && !allow_singular) throw std::invalid_argument("det C == 0");
}

MobiusState::MobiusState(Matrix c, bool allow_singular) : c_(std::move(c)) {
  validate(c_);
  abs_det_ = abs(c_.determinant());
  if (abs_det_ == 0 && !allow_singular) throw std::invalid_argument("det C == 0");
}

Matrix MobiusState::bracket() const {
  if (dimension() != 1) return c_;
  Matrix b = c_;
  b(0, 1) += c_(0, 0);
  b(1, 1) += c_(1, 0);
  return b;
}

std::optional<Tuple> MobiusState::can_output() const {
  const Matrix b = bracket();
  const std::size_t m = dimension();
  const auto last = b.row(m);
  if (!same_strict_sign(last)) return std::nullopt;
  Tuple out(m);
  for (std::size_t i = 0; i < m; ++i) {
    const BigInt f = floor_div(b(i, 0), last[0]);
    for (std::size_t j = 1; j <= m; ++j)
      if (floor_div(b(i, j), last[j]) != f) return std::nullopt;
    out[i] = f;
  }
  return out;
}

void MobiusState::absorb_input() {
  std::optional<Tuple> a;
  if (has_input_) a = input_.at(t_);
  if (!a) throw InputExhausted(has_input_ ? input_.label() : "none");
  absorb_tuple(*a);
}

void MobiusState::absorb_tuple(const Tuple& a) {
  if (a.size() != dimension()) throw std::invalid_argument("tuple dimension mismatch");
  c_ = c_ * step_matrix(a);
  ++t_;
}

void MobiusState::emit_output(const Tuple& applied, const Tuple& recorded) {
  if (applied.size() != dimension() || recorded.size() != dimension())
    throw std::invalid_argument("output tuple dimension mismatch");
  c_ = output_matrix(applied) * c_;
  ++s_;
  emitted_.push_back(recorded);
}

void MobiusState::left_multiply(const Matrix& u) { c_ = u * c_; }

void MobiusState::negate() { c_ = -c_; }

RunResult run_mobius(const Mcf& input, const Matrix& c, const RunLimits& limits,
                     const MobiusObserver& observer, bool allow_singular) {
  MobiusState st(input, c, allow_singular);
  RunResult res;
  auto record = [&](StepKind kind) {
    res.log.steps.push_back({kind, st.inputs(), st.outputs(), st.matrix().max_entry_bits()});
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
  while (live && st.outputs() < limits.max_outputs && st.transitions() < limits.max_steps) {
    if (auto b = st.can_output()) {
      st.emit_output(*b);
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

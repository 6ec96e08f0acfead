#include "mcf/partial_output.h"

#include <algorithm>
#include <type_traits>

#include "mcf/errors.h"

namespace mcf {

bool PartialAccumulator::is_zero() const {
  return std::all_of(pending.begin(), pending.end(), [](const BigInt& v) { return v == 0; });
}

namespace {

// Componentwise minimum floor of num/den over paired entries.
BigInt min_floor(const std::vector<BigInt>& num, const std::vector<BigInt>& den) {
  BigInt best = floor_div(num[0], den[0]);
  for (std::size_t k = 1; k < num.size(); ++k) best = std::min(best, floor_div(num[k], den[k]));
  return best;
}

Tuple add(const Tuple& a, const Tuple& b) {
  Tuple out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += b[i];
  return out;
}

bool all_zero(const Tuple& t) {
  return std::all_of(t.begin(), t.end(), [](const BigInt& v) { return v == 0; });
}

}  // namespace

std::optional<Tuple> partial_output_step(MobiusState& state, PartialAccumulator& acc) {
  const std::size_t m = state.dimension();
  if (acc.pending.size() != m) acc = PartialAccumulator(m);
  Matrix b = state.bracket();
  auto last = b.row(m);
  if (!same_strict_sign(last)) return std::nullopt;
  const bool flip = last[0] < 0;
  if (flip) {
    b = -b;
    last = b.row(m);
  }
  Tuple shear(m);
  for (std::size_t i = 0; i < m; ++i) shear[i] = min_floor(b.row(i), last);
  if (all_zero(shear)) return std::nullopt;
  if (flip) state.negate();
  Matrix u = Matrix::identity(m + 1);
  for (std::size_t i = 0; i < m; ++i) u(i, m) = -shear[i];
  state.left_multiply(u);
  acc.pending = add(acc.pending, shear);
  return shear;
}

std::optional<Tuple> bilinear_partial_step(BilinearState& state, PartialAccumulator& acc) {
  const std::size_t m = state.dimension();
  if (acc.pending.size() != m) acc = PartialAccumulator(m);
  FormFamily b = state.bracket();
  if (!same_strict_sign(b[m].entries())) return std::nullopt;
  const bool flip = b[m].entries()[0] < 0;
  if (flip)
    for (auto& c : b) c = -c;
  Tuple shear(m);
  for (std::size_t i = 0; i < m; ++i) shear[i] = min_floor(b[i].entries(), b[m].entries());
  if (all_zero(shear)) return std::nullopt;
  if (flip) state.negate();
  state.shift(shear);
  acc.pending = add(acc.pending, shear);
  return shear;
}

namespace {

template <class State, class Observer, class Step>
RunResult drive(State& st, std::size_t initial_inputs, const RunLimits& limits,
                const Observer& observer, Step partial_step) {
  RunResult res;
  PartialAccumulator acc(st.dimension());
  auto bits = [&] {
    if constexpr (std::is_same_v<State, MobiusState>)
      return st.matrix().max_entry_bits();
    else
      return st.max_entry_bits();
  };
  auto record = [&](StepKind kind) {
    res.log.steps.push_back({kind, st.inputs(), st.outputs(), bits()});
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
  for (std::size_t k = 0; live && k < initial_inputs && st.transitions() < limits.max_steps; ++k)
    live = absorb();
  while (live && st.outputs() < limits.max_outputs && st.transitions() < limits.max_steps) {
    if (auto b = st.can_output()) {
      st.emit_output(*b, add(acc.pending, *b));
      acc.reset();
      record(StepKind::Output);
    } else if (partial_step(st, acc)) {
      record(StepKind::Partial);
    } else {
      live = absorb();
    }
  }
  res.outputs = st.emitted();
  if (res.stop != StopReason::InputExhausted)
    res.stop = st.outputs() >= limits.max_outputs ? StopReason::MaxOutputs : StopReason::GuardHit;
  return res;
}

}  // namespace

RunResult run_with_partial(const Mcf& input, const Matrix& c, const RunLimits& limits,
                           const MobiusObserver& observer, bool allow_singular) {
  MobiusState st(input, c, allow_singular);
  return drive(st, 1, limits, observer, partial_output_step);
}

RunResult run_bilinear_with_partial(const Mcf& x, const Mcf& y, const FormFamily& family,
                                    const RunLimits& limits, const BilinearObserver& observer) {
  BilinearState st(family, x, y);
  return drive(st, 2, limits, observer, bilinear_partial_step);
}

}  // namespace mcf

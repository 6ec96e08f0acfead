#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mcf/exactnum.h"
#include "mcf/matrix.h"
#include "mcf/mcf.h"

namespace mcf {

enum class StepKind { Input, Output, Partial };

const char* to_string(StepKind k);

struct StepRecord {
  StepKind kind;
  std::size_t inputs;   // cumulative, after this step
  std::size_t outputs;  // cumulative, after this step
  std::size_t max_entry_bits;
};

struct StepLog {
  std::vector<StepRecord> steps;
  // For output k (0-based), the number of inputs consumed when it was emitted.
  std::vector<std::size_t> inputs_at_output;
};

enum class StopReason { MaxOutputs, GuardHit, InputExhausted };

const char* to_string(StopReason r);

struct RunLimits {
  std::size_t max_outputs = 10;
  std::size_t max_steps = 100000;  // bound on transitions r = s + t
};

struct RunResult {
  std::vector<Tuple> outputs;
  StepLog log;
  StopReason stop = StopReason::MaxOutputs;
  std::string exhausted_side;  // set when stop == InputExhausted
};

// Live state of the Moebius transducer: C maps the unread input tail to the
// unwritten output tail. Inputs right-multiply C by a step matrix, outputs
// left-multiply by an output matrix.
class MobiusState {
 public:
  // Throws std::invalid_argument for a non-square matrix, a dimension mismatch
  // or det C == 0 (unless allow_singular).
  MobiusState(Mcf input, Matrix c, bool allow_singular = false);
  // A state with no input stream; absorb_input() then throws InputExhausted.
  explicit MobiusState(Matrix c, bool allow_singular = false);

  std::size_t dimension() const { return c_.rows() - 1; }
  const Matrix& matrix() const { return c_; }

  // The matrix whose column ratios bracket the image of every admissible
  // tail. For m >= 2 this is C itself (tails range over a cone spanned by the
  // unit vectors). For m = 1 the tail lies in [1, inf), whose image is spanned
  // by the columns of C * [[1,1],[0,1]].
  Matrix bracket() const;

  // The common floor tuple if the last row of the bracket has a strict common
  // sign and every component's ratio floors agree.
  std::optional<Tuple> can_output() const;

  void absorb_input();
  void absorb_tuple(const Tuple& a);
  void emit_output(const Tuple& b) { emit_output(b, b); }
  // Applies the output matrix of `applied` but records `recorded`; used when
  // part of the tuple was already sheared off by partial output.
  void emit_output(const Tuple& applied, const Tuple& recorded);

  // Left-multiplies C by a unimodular matrix without touching the counters.
  void left_multiply(const Matrix& u);
  void negate();

  std::size_t inputs() const { return t_; }
  std::size_t outputs() const { return s_; }
  std::size_t transitions() const { return s_ + t_; }
  const BigInt& initial_abs_det() const { return abs_det_; }
  const std::vector<Tuple>& emitted() const { return emitted_; }
  const Mcf& input() const { return input_; }

 private:
  Mcf input_;
  bool has_input_ = false;
  Matrix c_;
  std::size_t s_ = 0;
  std::size_t t_ = 0;
  BigInt abs_det_;
  std::vector<Tuple> emitted_;
};

using MobiusObserver = std::function<void(const MobiusState&, StepKind)>;

// Greedy loop: absorb one input unconditionally, then while s < M and r < N
// emit whenever can_output succeeds, else absorb. Stops early (keeping the
// outputs so far) when the input runs out.
RunResult run_mobius(const Mcf& input, const Matrix& c, const RunLimits& limits,
                     const MobiusObserver& observer = {}, bool allow_singular = false);

}  // namespace mcf

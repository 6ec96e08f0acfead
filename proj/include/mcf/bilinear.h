#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mcf/exactnum.h"
#include "mcf/matrix.h"
#include "mcf/mcf.h"
#include "mcf/mobius.h"

namespace mcf {

enum class Side { X, Y };

const char* to_string(Side s);

// Component i of the image is sum_{j,l} C^(i)_{j,l} x^(j) y^(l) divided by the
// same form of C^(m+1), with x^(m+1) = y^(m+1) = 1.
using FormFamily = std::vector<Matrix>;

// x^(i) + y^(i), and x^(i) * y^(i), componentwise.
FormFamily sum_forms(std::size_t m);
FormFamily product_forms(std::size_t m);

// Live state of the bilinear transducer. Rows of every C^(i) index the side
// that will be read next; each input left-multiplies by the row-form step
// matrix, transposes, and hands the rows to the other side.
class BilinearState {
 public:
  // Throws std::invalid_argument unless the family has m+1 square matrices
  // of size m+1 and the streams have dimension m.
  BilinearState(FormFamily family, Mcf x, Mcf y);
  // No input streams; absorb_input() throws InputExhausted.
  explicit BilinearState(FormFamily family);

  std::size_t dimension() const { return family_.size() - 1; }
  const FormFamily& family() const { return family_; }
  Side active_side() const { return active_; }

  // Family whose entry ratios bracket the image: itself for m >= 2, and
  // R^T C R with R = [[1,1],[0,1]] for m = 1 (tails in [1, inf)).
  FormFamily bracket() const;

  std::optional<Tuple> can_output() const;

  void absorb_input();
  void absorb_tuple(const Tuple& a);
  void emit_output(const Tuple& d) { emit_output(d, d); }
  void emit_output(const Tuple& applied, const Tuple& recorded);

  // C^(i) -= shift^(i) C^(m+1) for i <= m, counters untouched.
  void shift(const Tuple& shift);
  void negate();

  std::size_t inputs_x() const { return tx_; }
  std::size_t inputs_y() const { return ty_; }
  std::size_t inputs() const { return tx_ + ty_; }
  std::size_t outputs() const { return s_; }
  std::size_t transitions() const { return s_ + tx_ + ty_; }
  std::size_t max_entry_bits() const;
  const std::vector<Tuple>& emitted() const { return emitted_; }

 private:
  FormFamily family_;
  Mcf x_;
  Mcf y_;
  bool has_input_ = false;
  Side active_ = Side::X;
  std::size_t tx_ = 0;
  std::size_t ty_ = 0;
  std::size_t s_ = 0;
  std::vector<Tuple> emitted_;
};

using BilinearObserver = std::function<void(const BilinearState&, StepKind)>;

// Greedy loop: one input from x and one from y, then while s < M and r < N
// output when possible, else read the active side.
RunResult run_bilinear(const Mcf& x, const Mcf& y, const FormFamily& family,
                       const RunLimits& limits, const BilinearObserver& observer = {});

}  // namespace mcf

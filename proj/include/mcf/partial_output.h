#pragma once

#include <optional>

#include "mcf/bilinear.h"
#include "mcf/exactnum.h"
#include "mcf/mobius.h"

namespace mcf {

// Running sum of the partial outputs sheared off since the last full output.
struct PartialAccumulator {
  Tuple pending;

  explicit PartialAccumulator(std::size_t m = 0) : pending(m, BigInt(0)) {}
  void reset() {
    for (auto& v : pending) v = 0;
  }
  bool is_zero() const;
};

// If the bracket's last row has a strict common sign (C is negated first when
// it is negative), shears b~^(i) = min_j floor(c_j^(i)/c_j^(m+1)) off every
// row: C <- U C with U the identity whose last column is (-b~, 1). Returns
// the shear, or nullopt when every b~^(i) is zero or the sign guard fails.
// The state is modified only when a shear is returned.
std::optional<Tuple> partial_output_step(MobiusState& state, PartialAccumulator& acc);

// Bilinear analogue: C^(i) <- C^(i) - d~^(i) C^(m+1) with
// d~^(i) = min_{j,l} floor(c_{j,l}^(i) / c_{j,l}^(m+1)).
std::optional<Tuple> bilinear_partial_step(BilinearState& state, PartialAccumulator& acc);

// Same scheduling as run_mobius with partial output slotted in:
// full output, else partial shear, else input. A full output records
// pending + residual floors and resets pending. Shears are logged as Partial
// steps but do not count as transitions.
RunResult run_with_partial(const Mcf& input, const Matrix& c, const RunLimits& limits,
                           const MobiusObserver& observer = {}, bool allow_singular = false);

RunResult run_bilinear_with_partial(const Mcf& x, const Mcf& y, const FormFamily& family,
                                    const RunLimits& limits,
                                    const BilinearObserver& observer = {});

}  // namespace mcf

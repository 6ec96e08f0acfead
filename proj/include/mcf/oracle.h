#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mcf/bilinear.h"
#include "mcf/exactnum.h"
#include "mcf/matrix.h"
#include "mcf/real_source.h"

namespace mcf {

// Component i: (sum_j c_j^(i) x^(j) + c_{m+1}^(i)) / (sum_j c_j^(m+1) x^(j) + c_{m+1}^(m+1)).
// enclose() raises the precision of x internally (doubling, up to
// opts.max_bits) until the denominator excludes zero, then throws
// PrecisionExhausted. An exactly zero denominator throws DivisionByZero.
SourcePtr eval_moebius(SourcePtr x, Matrix c, const JpaOptions& opts = {});

// Component i: sum_{j,l} C^(i)_{j,l} x^(j) y^(l) over the same form of C^(m+1).
SourcePtr eval_bilinear(SourcePtr x, SourcePtr y, FormFamily family, const JpaOptions& opts = {});

struct VerifyReport {
  bool agreed = false;
  std::optional<std::size_t> mismatch_index;
  bool undecidable = false;
  std::vector<Tuple> expected;  // the oracle prefix that could be certified
  std::string message;
};

// Expands `source` by certified JPA and compares it with `outputs`.
VerifyReport verify_prefix(const std::vector<Tuple>& outputs, const SourcePtr& source,
                           const JpaOptions& opts = {});

enum class BracketCheck { Inside, Outside, Undecided };

const char* to_string(BracketCheck c);

// Per-component [min, max] of num/den over paired entries; nullopt when the
// denominators do not share a strict sign.
std::optional<std::vector<std::pair<Rational, Rational>>> ratio_bracket(
    const std::vector<std::vector<BigInt>>& numerators, const std::vector<BigInt>& denominators);

// Whether the true complete quotient at output index `outputs` of `image`
// lies in the given bracket. Precision is raised until it decides.
BracketCheck check_in_bracket(const SourcePtr& image, std::size_t outputs,
                              const std::vector<std::pair<Rational, Rational>>& bracket,
                              const JpaOptions& opts = {});

}  // namespace mcf

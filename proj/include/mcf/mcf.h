#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mcf/exactnum.h"
#include "mcf/matrix.h"

namespace mcf {

// An m-tuple of partial-quotient sequences read in lockstep: step n yields the
// tuple (a_n^(1), ..., a_n^(m)). Backed by a finite list, a preperiod plus a
// period, or a generator.
class Mcf {
 public:
  // Returns the n-th tuple, or nullopt once the stream has ended. Must be
  // deterministic in n.
  using Generator = std::function<std::optional<Tuple>(std::size_t)>;

  Mcf() = default;

  // Step-major constructors: each Tuple is one step.
  static Mcf finite(std::vector<Tuple> steps);
  static Mcf periodic(std::vector<Tuple> preperiod, std::vector<Tuple> period);
  static Mcf generated(std::size_t m, Generator gen, std::string label = "generator");

  // Component-major constructor matching the JSON encoding: outer index is the
  // component i, inner index the step n. An empty period means finite.
  static Mcf from_components(const std::vector<std::vector<BigInt>>& preperiod,
                             const std::vector<std::vector<BigInt>>& period = {});

  std::size_t dimension() const { return m_; }
  std::optional<Tuple> at(std::size_t n) const;

  // Up to n leading tuples (fewer if the stream ends first).
  std::vector<Tuple> prefix(std::size_t n) const;

  bool is_generated() const { return static_cast<bool>(gen_); }
  bool is_periodic() const { return !gen_ && !period_.empty(); }
  bool is_finite() const { return !gen_ && period_.empty(); }
  const std::vector<Tuple>& preperiod() const { return pre_; }
  const std::vector<Tuple>& period() const { return period_; }
  const std::string& label() const { return label_; }

  // The same stream with the first k tuples dropped.
  Mcf shifted(std::size_t k) const;

 private:
  std::size_t m_ = 0;
  std::vector<Tuple> pre_;
  std::vector<Tuple> period_;
  std::shared_ptr<const Generator> gen_;
  std::size_t offset_ = 0;
  std::string label_;
};

// Column-form step matrix: first column (a^(1), ..., a^(m), 1), then the
// shifted identity. Right-multiplying a matrix by it absorbs one tuple.
Matrix step_matrix(const Tuple& a);

// Output matrix: first row e_{m+1}, row i+1 = e_i - b^(i) e_{m+1}.
// Left-multiplying by it emits the tuple b.
Matrix output_matrix(const Tuple& b);

// Product of the first n step matrices; identity for n = 0. Column j holds
// (A_{n-j}^(1), ..., A_{n-j}^(m+1)). Throws InputExhausted if the stream is
// shorter than n.
Matrix convergents(const Mcf& mcf, std::size_t n);

struct Violation {
  std::size_t step;
  std::size_t component;  // 1-based
  std::string reason;
  friend bool operator==(const Violation&, const Violation&) = default;
};

// Weak Perron admissibility over the first n steps: for n >= 1,
// a^(1) >= 1 and 0 <= a^(i) <= a^(1). Step 0 is unconstrained.
std::vector<Violation> check_admissible(const Mcf& mcf, std::size_t n);

// (A^(1)/A^(m+1), ..., A^(m)/A^(m+1)) read from the first column. Throws
// DivisionByZero if A^(m+1) == 0.
std::vector<Rational> eval_convergent(const Matrix& cm);

}  // namespace mcf

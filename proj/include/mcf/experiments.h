#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mcf/bilinear.h"
#include "mcf/exactnum.h"
#include "mcf/matrix.h"
#include "mcf/mobius.h"

namespace mcf {

enum class TrialMode { Cubic, RandomMcf, RandomBilinear };

const char* to_string(TrialMode m);
TrialMode parse_trial_mode(const std::string& s);

struct TrialConfig {
  TrialMode mode = TrialMode::RandomMcf;
  std::size_t m = 2;
  std::uint64_t bound = 1000;         // partial quotients drawn from [0, bound]
  std::uint64_t matrix_bound = 0;     // matrix entries from [0, matrix_bound]; 0 = bound
  std::size_t trials = 100;
  std::size_t max_outputs = 500;
  std::size_t max_steps = 0;          // 0 = 10 * max_outputs + 1000
  std::uint64_t seed = 1;
  std::uint64_t d_min = 2;            // cubic mode range
  std::uint64_t d_max = 100;
  std::size_t jobs = 1;
  double verify_fraction = 0.05;      // cubic mode: share of runs checked by the oracle
  bool partial_output = false;
  bool check_invariants = true;

  std::size_t effective_max_steps() const;
  std::uint64_t effective_matrix_bound() const;
  void validate() const;  // throws std::invalid_argument
};

enum class VerifyStatus { NotChecked, Agreed, Mismatch, Undecidable };

const char* to_string(VerifyStatus v);

struct TrialResult {
  std::size_t trial_id = 0;
  std::string d_or_seed;
  std::string matrix_id;
  std::vector<std::size_t> inputs_at_output;
  std::vector<std::size_t> bits_at_output;
  StopReason stop = StopReason::MaxOutputs;
  bool guard_hit = false;
  bool singular = false;  // matrix had det 0 and was run anyway
  std::optional<Rational> slope;
  VerifyStatus verify = VerifyStatus::NotChecked;
  std::size_t invariant_violations = 0;
  std::string note;
};

struct SuiteResult {
  TrialConfig config;
  std::vector<TrialResult> trials;  // ordered by trial_id

  // Mean of the fitted slopes over trials with >= 2 outputs.
  std::optional<Rational> mean_slope() const;
  std::optional<Rational> max_slope() const;
  // Mean cumulative inputs at each output index, per matrix id (cubic mode)
  // or under "all".
  std::map<std::string, std::vector<double>> mean_curves() const;
  std::size_t guard_hits() const;
  // trial_id,mode,m,d_or_seed,matrix_id,output_index,cumulative_inputs,max_entry_bits,guard_hit
  std::string csv() const;
};

// The three transformations of the cubic suite, by id "C1", "C2", "C3".
// C2 is singular as printed; the suite runs it anyway and flags the trials.
std::vector<std::pair<std::string, Matrix>> cubic_matrices();

bool is_perfect_cube(std::uint64_t d);

SuiteResult run_cubic_suite(const TrialConfig& cfg);
SuiteResult run_random_suite(const TrialConfig& cfg);
SuiteResult run_suite(const TrialConfig& cfg);

// Least-squares slope (with intercept) of inputs[k] against output index k+1.
// Throws std::invalid_argument for fewer than two points.
Rational fit_slope(std::span<const std::size_t> inputs);

// Deterministic generator pieces, exposed for tests.
std::uint64_t splitmix64(std::uint64_t x);
// A reproducible admissible stream: step 0 uniform in [0,B]^m, later steps
// a^(1) uniform in [1,B] and a^(i) uniform in [0,a^(1)].
Mcf random_admissible_mcf(std::size_t m, std::uint64_t bound, std::uint64_t seed);
// Uniform entries in [lo, hi], resampled until det != 0.
Matrix random_nonsingular_matrix(std::size_t n, std::int64_t lo, std::int64_t hi,
                                 std::uint64_t seed);
// Uniform entries in [0, bound], resampled until C^(m+1) is nonzero.
FormFamily random_form_family(std::size_t m, std::uint64_t bound, std::uint64_t seed);

}  // namespace mcf

#include "mcf/experiments.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "mcf/errors.h"
#include "mcf/oracle.h"
#include "mcf/partial_output.h"
#include "mcf/real_source.h"

namespace mcf {

const char* to_string(TrialMode m) {
  switch (m) {
    case TrialMode::Cubic: return "cubic";
    case TrialMode::RandomMcf: return "random-mcf";
    case TrialMode::RandomBilinear: return "random-bilinear";
  }
  return "?";
}

TrialMode parse_trial_mode(const std::string& s) {
  if (s == "cubic") return TrialMode::Cubic;
  if (s == "random-mcf") return TrialMode::RandomMcf;
  if (s == "random-bilinear") return TrialMode::RandomBilinear;
  throw std::invalid_argument("unknown experiment mode '" + s + "'");
}

const char* to_string(VerifyStatus v) {
  switch (v) {
    case VerifyStatus::NotChecked: return "not-checked";
    case VerifyStatus::Agreed: return "agreed";
    case VerifyStatus::Mismatch: return "mismatch";
    case VerifyStatus::Undecidable: return "undecidable";
  }
  return "?";
}

std::size_t TrialConfig::effective_max_steps() const {
  return max_steps ? max_steps : 10 * max_outputs + 1000;
}

std::uint64_t TrialConfig::effective_matrix_bound() const {
  return matrix_bound ? matrix_bound : bound;
}

void TrialConfig::validate() const {
  if (m < 1) throw std::invalid_argument("m must be >= 1");
  if (bound < 1) throw std::invalid_argument("bound must be >= 1");
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (max_outputs < 1) throw std::invalid_argument("max-outputs must be >= 1");
  if (mode == TrialMode::Cubic) {
    if (m != 2) throw std::invalid_argument("cubic mode works on (cbrt d, cbrt d^2), so m = 2");
    if (d_min < 2 || d_max < d_min) throw std::invalid_argument("cubic mode needs 2 <= d-min <= d-max");
  }
  if (verify_fraction < 0 || verify_fraction > 1)
    throw std::invalid_argument("verify fraction must lie in [0, 1]");
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

namespace {

// mt19937_64 is fully specified by the standard; the distribution classes are
// not, so draw uniforms by rejection to keep output identical across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  std::uint64_t below(std::uint64_t n) {  // uniform in [0, n)
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t v;
    do v = eng_();
    while (v >= limit);
    return v % n;
  }
  std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi) {
    if (hi - lo == std::numeric_limits<std::uint64_t>::max()) return eng_();
    return lo + below(hi - lo + 1);
  }
  std::int64_t uniform_signed(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo);
    return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + uniform(0, span));
  }

 private:
  std::mt19937_64 eng_;
};

BigInt big(std::uint64_t v) {
  BigInt out;
  mpz_import(out.get_mpz_t(), 1, 1, sizeof v, 0, 0, &v);
  return out;
}

std::uint64_t trial_seed(std::uint64_t seed, std::size_t trial, std::uint64_t salt) {
  return splitmix64(splitmix64(seed ^ salt) + trial);
}

template <class Fn>
void parallel_for(std::size_t n, std::size_t jobs, Fn fn) {
  jobs = std::max<std::size_t>(1, std::min(jobs, n));
  if (jobs == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < jobs; ++w)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < n;) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mu);
          if (!error) error = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

void fill_from_run(TrialResult& tr, const RunResult& run) {
  tr.inputs_at_output = run.log.inputs_at_output;
  for (const auto& st : run.log.steps)
    if (st.kind == StepKind::Output) tr.bits_at_output.push_back(st.max_entry_bits);
  tr.stop = run.stop;
  tr.guard_hit = run.stop == StopReason::GuardHit;
  if (tr.inputs_at_output.size() >= 2) tr.slope = fit_slope(tr.inputs_at_output);
}

RunResult run_moebius_checked(const TrialConfig& cfg, const Mcf& input, const Matrix& c,
                              bool allow_singular, std::size_t& violations) {
  const RunLimits limits{cfg.max_outputs, cfg.effective_max_steps()};
  MobiusObserver obs;
  if (cfg.check_invariants && !allow_singular) {
    const BigInt d0 = abs(c.determinant());
    obs = [d0, &violations](const MobiusState& st, StepKind) {
      if (abs(st.matrix().determinant()) != d0) ++violations;
    };
  }
  return cfg.partial_output ? run_with_partial(input, c, limits, obs, allow_singular)
                            : run_mobius(input, c, limits, obs, allow_singular);
}

}  // namespace

Rational fit_slope(std::span<const std::size_t> inputs) {
  const std::size_t n = inputs.size();
  if (n < 2) throw std::invalid_argument("fit_slope needs at least two outputs");
  // x_k = k for k = 1..n; slope = (n Sxy - Sx Sy) / (n Sxx - Sx^2).
  BigInt sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const BigInt x = static_cast<unsigned long>(k + 1);
    const BigInt y = static_cast<unsigned long>(inputs[k]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const BigInt nn = static_cast<unsigned long>(n);
  return make_rational(nn * sxy - sx * sy, nn * sxx - sx * sx);
}

Mcf random_admissible_mcf(std::size_t m, std::uint64_t bound, std::uint64_t seed) {
  if (m < 1 || bound < 1) throw std::invalid_argument("random stream needs m >= 1, bound >= 1");
  struct State {
    std::mutex mu;
    Rng rng;
    std::vector<Tuple> cache;
    explicit State(std::uint64_t s) : rng(s) {}
  };
  auto st = std::make_shared<State>(seed);
  auto gen = [st, m, bound](std::size_t n) -> std::optional<Tuple> {
    std::lock_guard lock(st->mu);
    while (st->cache.size() <= n) {
      Tuple t(m);
      if (st->cache.empty()) {
        for (auto& v : t) v = big(st->rng.uniform(0, bound));
      } else {
        const std::uint64_t a1 = st->rng.uniform(1, bound);
        t[0] = big(a1);
        for (std::size_t i = 1; i < m; ++i) t[i] = big(st->rng.uniform(0, a1));
      }
      st->cache.push_back(std::move(t));
    }
    return st->cache[n];
  };
  return Mcf::generated(m, std::move(gen), "random:" + std::to_string(seed));
}

Matrix random_nonsingular_matrix(std::size_t n, std::int64_t lo, std::int64_t hi,
                                 std::uint64_t seed) {
  if (lo > hi || n == 0) throw std::invalid_argument("bad random matrix range");
  if (lo == 0 && hi == 0) throw std::invalid_argument("no nonsingular matrix has all entries 0");
  Rng rng(seed);
  for (;;) {
    Matrix c(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t k = 0; k < n; ++k) c(r, k) = static_cast<long>(rng.uniform_signed(lo, hi));
    if (c.determinant() != 0) return c;
  }
}

FormFamily random_form_family(std::size_t m, std::uint64_t bound, std::uint64_t seed) {
  if (bound < 1) throw std::invalid_argument("form family needs bound >= 1");
  Rng rng(seed);
  for (;;) {
    FormFamily f(m + 1, Matrix(m + 1, m + 1));
    for (auto& c : f)
      for (std::size_t r = 0; r <= m; ++r)
        for (std::size_t k = 0; k <= m; ++k) c(r, k) = big(rng.uniform(0, bound));
    const auto& last = f[m].entries();
    if (std::any_of(last.begin(), last.end(), [](const BigInt& v) { return v != 0; })) return f;
  }
}

std::vector<std::pair<std::string, Matrix>> cubic_matrices() {
  return {{"C1", Matrix{{2, 0, 0}, {0, 2, 0}, {0, 0, 1}}},
          {"C2", Matrix{{1, -1, 0}, {1, -1, 0}, {0, 0, 1}}},
          {"C3", Matrix{{3, 5, 0}, {5, 3, 0}, {1, 0, 2}}}};
}

bool is_perfect_cube(std::uint64_t d) {
  BigInt r;
  const BigInt v = big(d);
  return mpz_root(r.get_mpz_t(), v.get_mpz_t(), 3) != 0;
}

SuiteResult run_cubic_suite(const TrialConfig& cfg) {
  cfg.validate();
  if (cfg.mode != TrialMode::Cubic) throw std::invalid_argument("run_cubic_suite needs mode cubic");
  struct Job {
    std::uint64_t d;
    std::string id;
    Matrix c;
  };
  std::vector<Job> jobs;
  for (std::uint64_t d = cfg.d_min; d <= cfg.d_max; ++d) {
    if (is_perfect_cube(d)) continue;
    for (auto& [id, c] : cubic_matrices()) jobs.push_back({d, id, c});
  }
  SuiteResult res;
  res.config = cfg;
  res.trials.resize(jobs.size());
  // Budget for the input expansion and the oracle; grows with the run length.
  const JpaOptions opts{64, std::max<std::size_t>(4096, 64 * cfg.effective_max_steps())};
  parallel_for(jobs.size(), cfg.jobs, [&](std::size_t k) {
    const Job& job = jobs[k];
    TrialResult& tr = res.trials[k];
    tr.trial_id = k;
    tr.d_or_seed = std::to_string(job.d);
    tr.matrix_id = job.id;
    tr.singular = job.c.determinant() == 0;
    if (tr.singular) tr.note = "singular matrix (det 0), run as printed";
    const SourcePtr src = cube_root_source(big(job.d), 2);
    try {
      const RunResult run = run_moebius_checked(cfg, jpa_stream(src, opts), job.c, tr.singular,
                                                tr.invariant_violations);
      fill_from_run(tr, run);
      Rng pick(trial_seed(cfg.seed, k, 0x766572696679ULL));
      const bool sample = static_cast<double>(pick.below(1u << 30)) <
                          cfg.verify_fraction * static_cast<double>(1u << 30);
      if (sample && !tr.singular) {
        const VerifyReport rep = verify_prefix(run.outputs, eval_moebius(src, job.c, opts), opts);
        tr.verify = rep.agreed          ? VerifyStatus::Agreed
                    : rep.mismatch_index ? VerifyStatus::Mismatch
                                         : VerifyStatus::Undecidable;
        if (!rep.agreed) tr.note += (tr.note.empty() ? "" : "; ") + rep.message;
      }
    } catch (const PrecisionExhausted& e) {
      tr.stop = StopReason::GuardHit;
      tr.guard_hit = true;
      tr.note += (tr.note.empty() ? "" : "; ") + std::string(e.what());
    }
  });
  return res;
}

SuiteResult run_random_suite(const TrialConfig& cfg) {
  cfg.validate();
  if (cfg.mode == TrialMode::Cubic) throw std::invalid_argument("run_random_suite needs a random mode");
  SuiteResult res;
  res.config = cfg;
  res.trials.resize(cfg.trials);
  const std::uint64_t mb = cfg.effective_matrix_bound();
  const RunLimits limits{cfg.max_outputs, cfg.effective_max_steps()};
  parallel_for(cfg.trials, cfg.jobs, [&](std::size_t k) {
    TrialResult& tr = res.trials[k];
    tr.trial_id = k;
    const std::uint64_t base = trial_seed(cfg.seed, k, 0);
    tr.d_or_seed = std::to_string(base);
    const Mcf x = random_admissible_mcf(cfg.m, cfg.bound, splitmix64(base + 1));
    if (cfg.mode == TrialMode::RandomMcf) {
      const Matrix c = random_nonsingular_matrix(cfg.m + 1, 0, static_cast<std::int64_t>(mb),
                                                 splitmix64(base + 2));
      tr.matrix_id = "random:" + std::to_string(splitmix64(base + 2));
      fill_from_run(tr, run_moebius_checked(cfg, x, c, false, tr.invariant_violations));
    } else {
      const Mcf y = random_admissible_mcf(cfg.m, cfg.bound, splitmix64(base + 3));
      const FormFamily f = random_form_family(cfg.m, mb, splitmix64(base + 2));
      tr.matrix_id = "random:" + std::to_string(splitmix64(base + 2));
      BilinearObserver obs;
      if (cfg.check_invariants)
        obs = [&tr](const BilinearState& st, StepKind kind) {
          // An output is only legal when the denominator form is sign-definite.
          if (kind == StepKind::Output && st.outputs() > 0) {
            Matrix prev = st.family()[0];  // old C^(m+1)
            if (st.dimension() == 1) {
              const Matrix r{{1, 1}, {0, 1}};
              prev = r.transposed() * prev * r;
            }
            if (!same_strict_sign(prev.entries())) ++tr.invariant_violations;
          }
        };
      fill_from_run(tr, cfg.partial_output ? run_bilinear_with_partial(x, y, f, limits, obs)
                                           : run_bilinear(x, y, f, limits, obs));
    }
  });
  return res;
}

SuiteResult run_suite(const TrialConfig& cfg) {
  return cfg.mode == TrialMode::Cubic ? run_cubic_suite(cfg) : run_random_suite(cfg);
}

std::optional<Rational> SuiteResult::mean_slope() const {
  Rational sum = 0;
  std::size_t n = 0;
  for (const auto& t : trials)
    if (t.slope) {
      sum += *t.slope;
      ++n;
    }
  if (n == 0) return std::nullopt;
  return Rational(sum / static_cast<unsigned long>(n));
}

std::optional<Rational> SuiteResult::max_slope() const {
  std::optional<Rational> best;
  for (const auto& t : trials)
    if (t.slope && (!best || *t.slope > *best)) best = *t.slope;
  return best;
}

std::map<std::string, std::vector<double>> SuiteResult::mean_curves() const {
  std::map<std::string, std::vector<double>> sums;
  std::map<std::string, std::vector<std::size_t>> counts;
  for (const auto& t : trials) {
    const std::string key = config.mode == TrialMode::Cubic ? t.matrix_id : "all";
    auto& s = sums[key];
    auto& c = counts[key];
    if (s.size() < t.inputs_at_output.size()) {
      s.resize(t.inputs_at_output.size(), 0.0);
      c.resize(t.inputs_at_output.size(), 0);
    }
    for (std::size_t k = 0; k < t.inputs_at_output.size(); ++k) {
      s[k] += static_cast<double>(t.inputs_at_output[k]);
      ++c[k];
    }
  }
  for (auto& [key, s] : sums)
    for (std::size_t k = 0; k < s.size(); ++k) s[k] /= static_cast<double>(counts[key][k]);
  return sums;
}

std::size_t SuiteResult::guard_hits() const {
  return static_cast<std::size_t>(
      std::count_if(trials.begin(), trials.end(), [](const TrialResult& t) { return t.guard_hit; }));
}

std::string SuiteResult::csv() const {
  std::ostringstream os;
  os << "trial_id,mode,m,d_or_seed,matrix_id,output_index,cumulative_inputs,max_entry_bits,"
        "guard_hit\n";
  for (const auto& t : trials) {
    for (std::size_t k = 0; k < t.inputs_at_output.size(); ++k)
      os << t.trial_id << ',' << to_string(config.mode) << ',' << config.m << ',' << t.d_or_seed
         << ',' << t.matrix_id << ',' << k + 1 << ',' << t.inputs_at_output[k] << ','
         << t.bits_at_output[k] << ',' << (t.guard_hit ? 1 : 0) << '\n';
    // Runs that produced nothing still get a row so guard hits are never dropped.
    if (t.inputs_at_output.empty())
      os << t.trial_id << ',' << to_string(config.mode) << ',' << config.m << ',' << t.d_or_seed
         << ',' << t.matrix_id << ",0,0,0," << (t.guard_hit ? 1 : 0) << '\n';
  }
  return os.str();
}

}  // namespace mcf

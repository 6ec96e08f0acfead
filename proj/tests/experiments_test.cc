#include "mcf/experiments.h"

#include <gtest/gtest.h>

#include <random>
#include <set>
#include <sstream>

#include "mcf/oracle.h"
#include "mcf/real_source.h"

namespace mcf {
namespace {

TEST(FitSlope, Examples) {
  const std::vector<std::size_t> line{1, 2, 3, 4};
  EXPECT_EQ(fit_slope(line), Rational(1));
  const std::vector<std::size_t> steps{1, 1, 2, 2};
  EXPECT_EQ(fit_slope(steps), make_rational(2, 5));
  const std::vector<std::size_t> flat{7, 7, 7};
  EXPECT_EQ(fit_slope(flat), Rational(0));
  const std::vector<std::size_t> one{3};
  EXPECT_THROW(fit_slope(one), std::invalid_argument);
}

// Independent closed form: slope = (n*Sxy - Sx*Sy) / (n*Sxx - Sx^2).
TEST(FitSlope, MatchesNormalEquations) {
  std::mt19937_64 rng(5);
  for (int rep = 0; rep < 50; ++rep) {
    const std::size_t n = 2 + rng() % 30;
    std::vector<std::size_t> y(n);
    for (auto& v : y) v = rng() % 1000;
    BigInt sx = 0, sy = 0, sxy = 0, sxx = 0;
    for (std::size_t k = 0; k < n; ++k) {
      const BigInt x = static_cast<unsigned long>(k + 1);
      const BigInt yy = static_cast<unsigned long>(y[k]);
      sx += x;
      sy += yy;
      sxy += x * yy;
      sxx += x * x;
    }
    const BigInt nn = static_cast<unsigned long>(n);
    EXPECT_EQ(fit_slope(y), make_rational(nn * sxy - sx * sy, nn * sxx - sx * sx));
  }
}

TEST(CubicMatrices, Shapes) {
  const auto ms = cubic_matrices();
  ASSERT_EQ(ms.size(), 3u);
  EXPECT_EQ(ms[0].first, "C1");
  EXPECT_EQ(ms[0].second, (Matrix{{2, 0, 0}, {0, 2, 0}, {0, 0, 1}}));
  EXPECT_EQ(ms[1].second.determinant(), 0);
  EXPECT_NE(ms[2].second.determinant(), 0);
}

TEST(PerfectCube, Examples) {
  for (std::uint64_t d : {1ULL, 8ULL, 27ULL, 1000ULL, 1ULL << 63}) EXPECT_TRUE(is_perfect_cube(d));
  for (std::uint64_t d : {2ULL, 9ULL, 26ULL, 28ULL, 999ULL}) EXPECT_FALSE(is_perfect_cube(d));
}

TEST(CubicSuite, SkipsPerfectCubes) {
  TrialConfig cfg;
  cfg.mode = TrialMode::Cubic;
  cfg.d_min = 7;
  cfg.d_max = 9;
  cfg.max_outputs = 5;
  cfg.verify_fraction = 0;
  const SuiteResult res = run_suite(cfg);
  std::set<std::string> ds;
  for (const auto& t : res.trials) ds.insert(t.d_or_seed);
  EXPECT_EQ(ds, (std::set<std::string>{"7", "9"}));
  EXPECT_EQ(res.trials.size(), 6u);
}

TEST(CubicSuite, C1OutputsAgreeWithOracle) {
  TrialConfig cfg;
  cfg.mode = TrialMode::Cubic;
  cfg.d_min = 2;
  cfg.d_max = 5;
  cfg.max_outputs = 10;
  cfg.verify_fraction = 1.0;
  const SuiteResult res = run_suite(cfg);
  for (const auto& t : res.trials) {
    if (t.matrix_id == "C2") {
      EXPECT_TRUE(t.singular);
      EXPECT_EQ(t.verify, VerifyStatus::NotChecked);
      continue;
    }
    EXPECT_EQ(t.verify, VerifyStatus::Agreed) << t.d_or_seed << " " << t.matrix_id << " " << t.note;
    EXPECT_EQ(t.inputs_at_output.size(), 10u);
    EXPECT_EQ(t.invariant_violations, 0u);
  }
}

TEST(RandomSuite, DeterministicAcrossJobCounts) {
  TrialConfig cfg;
  cfg.mode = TrialMode::RandomMcf;
  cfg.trials = 8;
  cfg.max_outputs = 30;
  cfg.bound = 50;
  cfg.seed = 42;
  const std::string a = run_suite(cfg).csv();
  cfg.jobs = 4;
  EXPECT_EQ(run_suite(cfg).csv(), a);
  cfg.seed = 43;
  EXPECT_NE(run_suite(cfg).csv(), a);
}

TEST(RandomSuite, BilinearRunsAndFitsSlopes) {
  TrialConfig cfg;
  cfg.mode = TrialMode::RandomBilinear;
  cfg.trials = 6;
  cfg.max_outputs = 40;
  cfg.bound = 100;
  const SuiteResult res = run_suite(cfg);
  ASSERT_TRUE(res.mean_slope());
  for (const auto& t : res.trials) {
    EXPECT_EQ(t.invariant_violations, 0u);
    if (t.inputs_at_output.size() >= 2) EXPECT_TRUE(t.slope);
  }
}

TEST(RandomSuite, CsvHeaderAndRows) {
  TrialConfig cfg;
  cfg.trials = 3;
  cfg.max_outputs = 4;
  const std::string csv = run_suite(cfg).csv();
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line,
            "trial_id,mode,m,d_or_seed,matrix_id,output_index,cumulative_inputs,max_entry_bits,"
            "guard_hit");
  std::size_t rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 12u);
}

TEST(RandomSuite, GuardHitStillWritesRow) {
  TrialConfig cfg;
  cfg.trials = 2;
  cfg.max_outputs = 50;
  cfg.max_steps = 1;
  const SuiteResult res = run_suite(cfg);
  EXPECT_EQ(res.guard_hits(), 2u);
  EXPECT_NE(res.csv().find(",0,0,0,1\n"), std::string::npos);
}

TEST(Generators, AdmissibleAndReproducible) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Mcf x = random_admissible_mcf(3, 30, seed);
    EXPECT_EQ(x.prefix(50), random_admissible_mcf(3, 30, seed).prefix(50));
    EXPECT_TRUE(check_admissible(x, 50).empty());
    const Matrix c = random_nonsingular_matrix(3, -50, 50, seed);
    EXPECT_NE(c.determinant(), 0);
    for (const auto& e : c.entries()) {
      EXPECT_GE(e, -50);
      EXPECT_LE(e, 50);
    }
    const FormFamily f = random_form_family(2, 9, seed);
    ASSERT_EQ(f.size(), 3u);
    EXPECT_NE(f[2], Matrix(3, 3));
  }
}

TEST(TrialConfig, Validation) {
  TrialConfig cfg;
  cfg.mode = TrialMode::Cubic;
  cfg.m = 3;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  EXPECT_EQ(parse_trial_mode("random-bilinear"), TrialMode::RandomBilinear);
  EXPECT_THROW(parse_trial_mode("nope"), std::invalid_argument);
  TrialConfig d;
  d.max_outputs = 7;
  EXPECT_EQ(d.effective_max_steps(), 1070u);
}

}  // namespace
}  // namespace mcf

#include "mcf/oracle.h"

#include <gtest/gtest.h>

#include "mcf/errors.h"
#include "mcf/mobius.h"
#include "support/cubic_field.h"

namespace mcf {
namespace {

using testing::CubicElem;

Mcf e1_input() { return Mcf::from_components({{1}, {1}}, {{1, 2}, {0, 1}}); }
const Matrix kE1{{3, 0, 0}, {0, -2, 0}, {0, 0, 6}};

TEST(EvalMoebius, IdentityKeepsValues) {
  const auto src = cube_root_source(3, 2);
  const auto img = eval_moebius(src, Matrix::identity(3));
  const auto a = img->enclose(200);
  const auto b = src->enclose(400);
  for (std::size_t i = 0; i < 2; ++i) EXPECT_TRUE(a[i].contains(b[i].lo()));
}

TEST(EvalMoebius, DoublingMatrix) {
  const auto img = eval_moebius(cube_root_source(2, 2), Matrix{{2, 0, 0}, {0, 2, 0}, {0, 0, 1}});
  const auto v = img->enclose(100);
  EXPECT_NEAR(v[0].lo().get_d(), 2 * 1.2599210498948732, 1e-12);
  EXPECT_NEAR(v[1].lo().get_d(), 2 * 1.5874010519681994, 1e-12);
}

// C2 as printed has equal rows, so both components coincide.
TEST(EvalMoebius, SingularC2GivesEqualComponents) {
  const auto img = eval_moebius(cube_root_source(2, 2), Matrix{{1, -1, 0}, {1, -1, 0}, {0, 0, 1}});
  const auto v = img->enclose(64);
  EXPECT_EQ(v[0], v[1]);
  EXPECT_NEAR(v[0].lo().get_d(), 1.2599210498948732 - 1.5874010519681994, 1e-12);
}

TEST(EvalMoebius, ZeroDenominator) {
  const auto img = eval_moebius(rational_source({Rational(1)}), Matrix{{1, 0}, {1, -1}});
  EXPECT_THROW(img->enclose(64), DivisionByZero);
}

TEST(EvalMoebius, MatchesCubicFieldOracle) {
  const Matrix c{{3, 5, 0}, {5, 3, 0}, {1, 0, 2}};
  for (long d : {2L, 3L, 5L}) {
    const auto want = testing::cubic_jpa(testing::cubic_moebius(d, c), 15);
    EXPECT_EQ(jpa_expand(eval_moebius(cube_root_source(d, 2), c), 15), want) << "d=" << d;
  }
}

TEST(EvalMoebius, EnclosuresNest) {
  const auto img = eval_moebius(cube_root_source(7, 2), Matrix{{3, 5, 0}, {5, 3, 0}, {1, 0, 2}});
  auto prev = img->enclose(16);
  for (std::size_t b = 32; b <= 512; b *= 2) {
    const auto cur = img->enclose(b);
    // Rounding may widen slightly, but the true value stays in every enclosure.
    const auto fine = img->enclose(2048);
    for (std::size_t i = 0; i < 2; ++i) {
      EXPECT_TRUE(cur[i].contains(fine[i].lo()));
      EXPECT_LE(cur[i].width(), prev[i].width());
    }
    prev = cur;
  }
}

TEST(EvalBilinear, ProductOfRationals) {
  const auto img = eval_bilinear(rational_source({make_rational(3, 2)}),
                                 rational_source({make_rational(5, 2)}), product_forms(1));
  const auto v = img->enclose(8);
  EXPECT_TRUE(v[0].is_point());
  EXPECT_EQ(v[0].lo(), make_rational(15, 4));
}

TEST(EvalBilinear, SumOfSqrtTwos) {
  const auto img = eval_bilinear(sqrt_source(2), sqrt_source(2), sum_forms(1));
  EXPECT_EQ(jpa_expand(img, 12), jpa_expand(sqrt_source(8), 12));
}

TEST(EvalBilinear, ExampleE3) {
  const auto x = mcf_source(Mcf::from_components({{-2}, {1}}, {{1, 2}, {0, 1}}));
  const auto y = mcf_source(Mcf::from_components({{-3}, {0}}, {{1, 0}, {1, 0}}));
  const FormFamily f{Matrix{{0, 0, 1}, {0, 0, 0}, {0, 1, 0}}, Matrix{{0, 0, 0}, {1, 0, 0}, {0, 0, 0}},
                     Matrix{{0, 0, 0}, {0, 0, 0}, {0, 0, 1}}};
  const auto got = jpa_expand(eval_bilinear(x, y, f), 7);
  const std::vector<Tuple> want{{-2, -3}, {7, 7}, {36, 26}, {1, 0}, {3, 0}, {4, 0}, {2, 1}};
  EXPECT_EQ(got, want);
}

TEST(VerifyPrefix, ExampleE1Agrees) {
  const RunResult res = run_mobius(e1_input(), kE1, {7, 1000});
  const VerifyReport rep = verify_prefix(res.outputs, eval_moebius(mcf_source(e1_input()), kE1));
  EXPECT_TRUE(rep.agreed) << rep.message;
  EXPECT_EQ(rep.expected.size(), 7u);
}

TEST(VerifyPrefix, CorruptedIndexIsReported) {
  RunResult res = run_mobius(e1_input(), kE1, {7, 1000});
  res.outputs[3][1] += 1;
  const VerifyReport rep = verify_prefix(res.outputs, eval_moebius(mcf_source(e1_input()), kE1));
  EXPECT_FALSE(rep.agreed);
  EXPECT_EQ(rep.mismatch_index, 3u);
}

TEST(VerifyPrefix, UndecidableAtBudget) {
  const auto outs = jpa_expand(cube_root_source(3, 2), 200);
  const VerifyReport rep = verify_prefix(outs, cube_root_source(3, 2), JpaOptions{64, 128});
  EXPECT_FALSE(rep.agreed);
  EXPECT_TRUE(rep.undecidable);
  EXPECT_FALSE(rep.mismatch_index);
}

TEST(VerifyPrefix, TerminatingOracle) {
  const VerifyReport rep = verify_prefix({{1}, {2}, {5}}, rational_source({make_rational(3, 2)}));
  EXPECT_FALSE(rep.agreed);
  EXPECT_EQ(rep.mismatch_index, 2u);
}

TEST(Bracket, MediantHoldsAlongE1) {
  const auto image = eval_moebius(mcf_source(e1_input()), kE1);
  std::size_t checked = 0;
  run_mobius(e1_input(), kE1, {7, 1000}, [&](const MobiusState& st, StepKind) {
    const Matrix b = st.bracket();
    std::vector<std::vector<BigInt>> nums;
    for (std::size_t i = 0; i < st.dimension(); ++i) nums.push_back(b.row(i));
    const auto br = ratio_bracket(nums, b.row(st.dimension()));
    if (!br) return;
    EXPECT_EQ(check_in_bracket(image, st.outputs(), *br), BracketCheck::Inside);
    ++checked;
  });
  EXPECT_GT(checked, 5u);
}

TEST(Bracket, OutsideIsDetected) {
  const auto image = sqrt_source(2);
  EXPECT_EQ(check_in_bracket(image, 0, {{Rational(2), Rational(3)}}), BracketCheck::Outside);
  EXPECT_EQ(check_in_bracket(image, 0, {{Rational(1), Rational(2)}}), BracketCheck::Inside);
  EXPECT_FALSE(ratio_bracket({{1, 2}}, {1, 0}));
}

}  // namespace
}  // namespace mcf

#include "mcf/matrix.h"

#include <gtest/gtest.h>

#include <random>

namespace mcf {
namespace {

TEST(MatrixTest, ProductAndTranspose) {
  const Matrix a{{1, 2}, {3, 4}};
  const Matrix b{{0, 1}, {1, 0}};
  EXPECT_EQ(a * b, (Matrix{{2, 1}, {4, 3}}));
  EXPECT_EQ(a.transposed(), (Matrix{{1, 3}, {2, 4}}));
  EXPECT_EQ(Matrix::identity(2) * a, a);
  EXPECT_EQ(BigInt(2) * a, (Matrix{{2, 4}, {6, 8}}));
  EXPECT_EQ(a - a, Matrix(2, 2));
}

TEST(MatrixTest, Determinant) {
  EXPECT_EQ((Matrix{{3, 0, 0}, {0, -2, 0}, {0, 0, 6}}).determinant(), -36);
  EXPECT_EQ((Matrix{{1, -1, 0}, {1, -1, 0}, {0, 0, 1}}).determinant(), 0);
  EXPECT_EQ((Matrix{{3, 5, 0}, {5, 3, 0}, {1, 0, 2}}).determinant(), -32);
  EXPECT_EQ((Matrix{{0, 1}, {1, 0}}).determinant(), -1);
  EXPECT_EQ((Matrix{{0, 0, 1}, {0, 1, 0}, {1, 0, 0}}).determinant(), -1);
}

// Cofactor expansion as an independent reference.
BigInt cofactor_det(const Matrix& a) {
  const std::size_t n = a.rows();
  if (n == 1) return a(0, 0);
  BigInt sum = 0;
  for (std::size_t c = 0; c < n; ++c) {
    Matrix minor(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t k = 0, kk = 0; k < n; ++k)
        if (k != c) minor(r - 1, kk++) = a(r, k);
    const BigInt term = a(0, c) * cofactor_det(minor);
    sum += (c % 2 ? -term : term);
  }
  return sum;
}

TEST(MatrixTest, DeterminantMatchesCofactorExpansion) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> dist(-9, 9);
  for (std::size_t n = 1; n <= 5; ++n)
    for (int k = 0; k < 200; ++k) {
      Matrix a(n, n);
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) a(r, c) = dist(rng);
      EXPECT_EQ(a.determinant(), cofactor_det(a)) << a;
    }
}

TEST(MatrixTest, Formatting) {
  EXPECT_EQ((Matrix{{1, -2}, {3, 4}}).to_string(), "[[1,-2],[3,4]]");
  EXPECT_EQ((Matrix{{1, -2}, {300, 4}}).max_entry_bits(), 9u);
}

TEST(MatrixTest, ShapeErrors) {
  EXPECT_THROW((Matrix{{1, 2}, {3}}), std::invalid_argument);
  EXPECT_THROW(Matrix(2, 3) * Matrix(2, 3), std::invalid_argument);
  EXPECT_THROW(Matrix(2, 3).determinant(), std::invalid_argument);
}

}  // namespace
}  // namespace mcf

#pragma once

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <string>
#include <vector>

#include "mcf/exactnum.h"

namespace mcf {

// Dense row-major matrix of arbitrary-precision integers. Sizes here are tiny
// ((m+1) x (m+1) with m <= 3 in practice), so everything is straightforward.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  Matrix(std::initializer_list<std::initializer_list<long>> rows);

  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<std::vector<BigInt>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  BigInt& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const BigInt& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<BigInt> row(std::size_t r) const;
  std::vector<BigInt> column(std::size_t c) const;
  const std::vector<BigInt>& entries() const { return data_; }

  Matrix transposed() const;
  BigInt determinant() const;
  std::size_t max_entry_bits() const;

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator*(const BigInt& k, const Matrix& a);
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  Matrix operator-() const;

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> data_;
};

std::ostream& operator<<(std::ostream& os, const Matrix& m);

}  // namespace mcf

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "efk/rational.hpp"

namespace efk {

// Dense exact matrix over Q, row-major.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  QMatrix(std::initializer_list<std::initializer_list<long>> rows);
  static QMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  QMatrix transpose() const;
  QMatrix operator*(const QMatrix& o) const;
  std::vector<Rational> operator*(const std::vector<Rational>& v) const;
  QMatrix operator*(const Rational& s) const;
  QMatrix operator+(const QMatrix& o) const;
  QMatrix operator-(const QMatrix& o) const;
  bool operator==(const QMatrix& o) const;

  // Gauss-Jordan; throws Error(InvalidArgument) when singular.
  QMatrix inverse() const;
  std::size_t rank() const;
  // Basis of {x : M x = 0}, each vector scaled to primitive integers.
  std::vector<std::vector<Rational>> nullspace() const;

  bool is_integral() const;
  bool all_positive() const;
  std::string str() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rational> data_;
};

// Scales a rational vector to a primitive integer vector with the same direction.
std::vector<Rational> primitive(std::vector<Rational> v);

}  // namespace efk

#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "qbound/errors.hpp"

namespace qbound {

using cdouble = std::complex<double>;
using CVector = std::vector<cdouble>;
using RVector = std::vector<double>;

// Dense row-major complex matrix. Everything in this library lives at
// d <= 64, so there is no blocking, no sparsity, and no view machinery;
// matrices are plain values.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols, cdouble(0.0, 0.0)) {}

  static ComplexMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  cdouble& operator()(std::size_t i, std::size_t j) {
    return entries_[i * cols_ + j];
  }
  const cdouble& operator()(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }

  const std::vector<cdouble>& entries() const { return entries_; }

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(cdouble scalar);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) {
    a += b;
    return a;
  }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) {
    a -= b;
    return a;
  }
  friend ComplexMatrix operator*(cdouble scalar, ComplexMatrix a) {
    a *= scalar;
    return a;
  }
  friend ComplexMatrix operator*(const ComplexMatrix& a,
                                 const ComplexMatrix& b);

  ComplexMatrix dagger() const;
  cdouble trace() const;

  double max_abs() const;
  double frobenius_norm() const;
  // max_ij |a_ij - a_ji^*|, zero for an exactly Hermitian matrix
  double hermitian_deviation() const;
  double max_abs_diff(const ComplexMatrix& other) const;
  bool all_finite() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cdouble> entries_;
};

// |u><v|
ComplexMatrix outer(const CVector& u, const CVector& v);
// Kronecker product, `a` as the slow (left) factor
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

CVector apply(const ComplexMatrix& m, const CVector& v);
cdouble inner(const CVector& u, const CVector& v);  // <u|v>
// <v|m|v>, real part (m is Hermitian wherever this is used)
double expectation(const ComplexMatrix& m, const CVector& v);
double norm(const CVector& v);
void normalize(CVector& v);

}  // namespace qbound

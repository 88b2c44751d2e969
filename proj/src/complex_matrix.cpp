#include "qbound/complex_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qbound {

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    fail(ErrorCode::DimensionMismatch, "matrix addition shape mismatch");
  for (std::size_t i = 0; i < entries_.size(); ++i)
    entries_[i] += other.entries_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    fail(ErrorCode::DimensionMismatch, "matrix subtraction shape mismatch");
  for (std::size_t i = 0; i < entries_.size(); ++i)
    entries_[i] -= other.entries_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cdouble scalar) {
  for (auto& e : entries_) e *= scalar;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows())
    fail(ErrorCode::DimensionMismatch, "matrix product shape mismatch");
  ComplexMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const cdouble aik = a(i, k);
      if (aik == cdouble(0.0, 0.0)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

ComplexMatrix ComplexMatrix::dagger() const {
  ComplexMatrix m(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      m(j, i) = std::conj((*this)(i, j));
  return m;
}

cdouble ComplexMatrix::trace() const {
  cdouble t = 0.0;
  for (std::size_t i = 0; i < rows_ && i < cols_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& e : entries_) m = std::max(m, std::abs(e));
  return m;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& e : entries_) s += std::norm(e);
  return std::sqrt(s);
}

double ComplexMatrix::hermitian_deviation() const {
  if (!square()) return std::numeric_limits<double>::infinity();
  double dev = 0.0;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i; j < cols_; ++j)
      dev = std::max(dev, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
  return dev;
}

double ComplexMatrix::max_abs_diff(const ComplexMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    fail(ErrorCode::DimensionMismatch, "matrix comparison shape mismatch");
  double dev = 0.0;
  for (std::size_t i = 0; i < entries_.size(); ++i)
    dev = std::max(dev, std::abs(entries_[i] - other.entries_[i]));
  return dev;
}

bool ComplexMatrix::all_finite() const {
  for (const auto& e : entries_)
    if (!std::isfinite(e.real()) || !std::isfinite(e.imag())) return false;
  return true;
}

ComplexMatrix outer(const CVector& u, const CVector& v) {
  ComplexMatrix m(u.size(), v.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j)
      m(i, j) = u[i] * std::conj(v[j]);
  return m;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix m(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const cdouble aij = a(i, j);
      if (aij == cdouble(0.0, 0.0)) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          m(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return m;
}

CVector apply(const ComplexMatrix& m, const CVector& v) {
  if (m.cols() != v.size())
    fail(ErrorCode::DimensionMismatch, "matrix-vector shape mismatch");
  CVector out(m.rows(), cdouble(0.0, 0.0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i] += m(i, j) * v[j];
  return out;
}

cdouble inner(const CVector& u, const CVector& v) {
  if (u.size() != v.size())
    fail(ErrorCode::DimensionMismatch, "inner product length mismatch");
  cdouble s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += std::conj(u[i]) * v[i];
  return s;
}

double expectation(const ComplexMatrix& m, const CVector& v) {
  return inner(v, apply(m, v)).real();
}

double norm(const CVector& v) {
  double s = 0.0;
  for (const auto& e : v) s += std::norm(e);
  return std::sqrt(s);
}

void normalize(CVector& v) {
  const double n = norm(v);
  if (n <= 0.0) fail(ErrorCode::BadParameter, "cannot normalize zero vector");
  for (auto& e : v) e /= n;
}

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonOrthonormal: return "NonOrthonormal";
    case ErrorCode::IncompleteBasis: return "IncompleteBasis";
    case ErrorCode::NotPsd: return "NotPSD";
    case ErrorCode::NotCompleteToIdentity: return "NotCompleteToIdentity";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::BadFactorization: return "BadFactorization";
    case ErrorCode::BadParameter: return "BadParameter";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NegativeComponent: return "NegativeComponent";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::NotMonotone: return "NotMonotone";
    case ErrorCode::KOutOfRange: return "KOutOfRange";
    case ErrorCode::PoolTooLarge: return "PoolTooLarge";
    case ErrorCode::BadSpectrum: return "BadSpectrum";
    case ErrorCode::NotProjective: return "NotProjective";
    case ErrorCode::NonPositiveBound: return "NonPositiveBound";
    case ErrorCode::SettingCountMismatch: return "SettingCountMismatch";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::DTooLarge: return "DTooLarge";
    case ErrorCode::DimTooLarge: return "DimTooLarge";
    case ErrorCode::TooManyStrategies: return "TooManyStrategies";
    case ErrorCode::RangeError: return "RangeError";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "UnknownError";
}

}  // namespace qbound

#include "qbound/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qbound {

namespace {

constexpr int kMaxSweeps = 100;
constexpr double kOffDiagonalStop = 1e-13;

double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

// One complex Jacobi rotation zeroing a(p,q). The rotation is the real
// Jacobi rotation conjugated by the phase of a(p,q):
//   G_pp = c, G_pq = -s*u, G_qp = s*conj(u), G_qq = c,  u = a_pq/|a_pq|.
void rotate(ComplexMatrix& a, ComplexMatrix* v, std::size_t p, std::size_t q) {
  const cdouble apq = a(p, q);
  const double mag = std::abs(apq);
  if (mag == 0.0) return;
  const cdouble u = apq / mag;

  const double app = a(p, p).real();
  const double aqq = a(q, q).real();
  // small-magnitude root of t^2 - 2*tau*t - 1 = 0
  const double tau = (aqq - app) / (2.0 * mag);
  double t;
  if (tau >= 0.0)
    t = -1.0 / (tau + std::sqrt(1.0 + tau * tau));
  else
    t = 1.0 / (-tau + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;

  const std::size_t n = a.rows();
  // columns: A <- A G
  for (std::size_t i = 0; i < n; ++i) {
    const cdouble aip = a(i, p);
    const cdouble aiq = a(i, q);
    a(i, p) = aip * c + aiq * s * std::conj(u);
    a(i, q) = -aip * s * u + aiq * c;
  }
  // rows: A <- G^dagger A
  for (std::size_t j = 0; j < n; ++j) {
    const cdouble apj = a(p, j);
    const cdouble aqj = a(q, j);
    a(p, j) = c * apj + s * u * aqj;
    a(q, j) = -s * std::conj(u) * apj + c * aqj;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = cdouble(a(p, p).real(), 0.0);
  a(q, q) = cdouble(a(q, q).real(), 0.0);

  if (v) {
    for (std::size_t i = 0; i < n; ++i) {
      const cdouble vip = (*v)(i, p);
      const cdouble viq = (*v)(i, q);
      (*v)(i, p) = vip * c + viq * s * std::conj(u);
      (*v)(i, q) = -vip * s * u + viq * c;
    }
  }
}

// Core driver; `vectors` may be null when only eigenvalues are needed.
std::vector<double> jacobi(const ComplexMatrix& m, ComplexMatrix* vectors) {
  if (!m.square())
    fail(ErrorCode::NotHermitian, "matrix is not square");
  if (!m.all_finite())
    fail(ErrorCode::BadParameter, "matrix has non-finite entries");
  if (m.hermitian_deviation() > kHermitianTol)
    fail(ErrorCode::NotHermitian, "matrix deviates from Hermitian symmetry");

  const std::size_t n = m.rows();
  // Symmetrize so the iteration sees an exactly Hermitian matrix.
  ComplexMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      a(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));

  if (vectors) *vectors = ComplexMatrix::identity(n);

  const double stop = kOffDiagonalStop * std::max(1.0, a.frobenius_norm());
  bool converged = off_diagonal_norm(a) <= stop;
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q)
        if (std::abs(a(p, q)) > 0.0) rotate(a, vectors, p, q);
    converged = off_diagonal_norm(a) <= stop;
  }
  if (!converged)
    fail(ErrorCode::NoConvergence, "Jacobi sweeps exhausted");

  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = a(i, i).real();

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) {
                     return values[x] > values[y];
                   });

  std::vector<double> sorted(n);
  for (std::size_t i = 0; i < n; ++i) sorted[i] = values[order[i]];
  if (vectors) {
    ComplexMatrix permuted(n, n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i)
        permuted(i, j) = (*vectors)(i, order[j]);
    *vectors = std::move(permuted);
  }
  return sorted;
}

}  // namespace

EigenSystem hermitian_eigensystem(const ComplexMatrix& m) {
  EigenSystem sys;
  sys.values = jacobi(m, &sys.vectors);
  return sys;
}

Spectrum hermitian_spectrum(const ComplexMatrix& m) {
  return Spectrum{jacobi(m, nullptr)};
}

double max_hermitian_eigenvalue(const ComplexMatrix& m) {
  return jacobi(m, nullptr).front();
}

CVector top_eigenvector(const ComplexMatrix& m) {
  const EigenSystem sys = hermitian_eigensystem(m);
  CVector v(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) v[i] = sys.vectors(i, 0);
  // pin the global phase so repeated runs agree bit for bit
  std::size_t imax = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (std::abs(v[i]) > std::abs(v[imax])) imax = i;
  if (std::abs(v[imax]) > 0.0) {
    const cdouble phase = std::abs(v[imax]) / v[imax];
    for (auto& e : v) e *= phase;
  }
  return v;
}

Spectrum singular_values(const ComplexMatrix& m) {
  const ComplexMatrix gram = m.dagger() * m;
  Spectrum spec = hermitian_spectrum(gram);
  for (auto& v : spec.values) v = std::sqrt(std::max(0.0, v));
  return spec;
}

}  // namespace qbound

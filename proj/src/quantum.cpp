#include "qbound/quantum.hpp"

#include <algorithm>
#include <cmath>

#include "qbound/rng.hpp"

namespace qbound {

namespace {

void check_finite(const ComplexMatrix& m, const char* what) {
  if (!m.all_finite())
    fail(ErrorCode::BadParameter, std::string(what) + " has non-finite entries");
}

double min_eigenvalue(const ComplexMatrix& m) {
  return hermitian_spectrum(m).values.back();
}

}  // namespace

DensityState make_density_state(
    ComplexMatrix matrix, std::string label,
    std::optional<std::pair<std::size_t, std::size_t>> split) {
  check_finite(matrix, "density matrix");
  if (!matrix.square())
    fail(ErrorCode::DimensionMismatch, "density matrix is not square");
  if (matrix.hermitian_deviation() > kHermitianTol)
    fail(ErrorCode::NotHermitian, "density matrix is not Hermitian");
  if (std::abs(matrix.trace().real() - 1.0) > kTraceTol ||
      std::abs(matrix.trace().imag()) > kTraceTol)
    fail(ErrorCode::BadParameter, "density matrix trace differs from 1");
  if (min_eigenvalue(matrix) < -kPsdTol)
    fail(ErrorCode::NotPsd, "density matrix has a negative eigenvalue");
  const std::size_t dim = matrix.rows();
  if (split && split->first * split->second != dim)
    fail(ErrorCode::BadFactorization,
         "declared split inconsistent with total dimension");
  return DensityState{dim, std::move(matrix), std::move(label), split};
}

Measurement make_projective_measurement(const std::vector<CVector>& vectors,
                                        std::string label) {
  if (vectors.empty())
    fail(ErrorCode::IncompleteBasis, "no basis vectors given");
  const std::size_t dim = vectors.front().size();
  for (const auto& v : vectors) {
    if (v.size() != dim)
      fail(ErrorCode::DimensionMismatch, "basis vectors of unequal dimension");
    for (const auto& e : v)
      if (!std::isfinite(e.real()) || !std::isfinite(e.imag()))
        fail(ErrorCode::BadParameter, "basis vector has non-finite entries");
  }
  if (vectors.size() > dim)
    fail(ErrorCode::NonOrthonormal, "more vectors than the dimension allows");
  // Gram matrix must be the identity.
  for (std::size_t i = 0; i < vectors.size(); ++i)
    for (std::size_t j = i; j < vectors.size(); ++j) {
      const cdouble g = inner(vectors[i], vectors[j]);
      const cdouble expected = (i == j) ? cdouble(1.0, 0.0) : cdouble(0.0, 0.0);
      if (std::abs(g - expected) > kOrthonormalTol)
        fail(ErrorCode::NonOrthonormal, "Gram matrix deviates from identity");
    }
  // Bases must be complete; partial vector lists are rejected rather than
  // silently extended.
  if (vectors.size() < dim)
    fail(ErrorCode::IncompleteBasis, "basis does not span the space");

  Measurement m;
  m.label = std::move(label);
  m.dim = dim;
  m.kind = MeasurementKind::ProjectiveBasis;
  m.vectors = vectors;
  m.elements.reserve(dim);
  for (const auto& v : vectors) m.elements.push_back(outer(v, v));
  return m;
}

Measurement make_povm(const std::vector<ComplexMatrix>& elements,
                      std::string label) {
  if (elements.empty())
    fail(ErrorCode::NotCompleteToIdentity, "no POVM elements given");
  const std::size_t dim = elements.front().rows();
  ComplexMatrix sum(dim, dim);
  for (const auto& e : elements) {
    check_finite(e, "POVM element");
    if (!e.square() || e.rows() != dim)
      fail(ErrorCode::DimensionMismatch, "POVM elements of unequal dimension");
    if (e.hermitian_deviation() > kHermitianTol)
      fail(ErrorCode::NotPsd, "POVM element is not Hermitian");
    if (min_eigenvalue(e) < -kPsdTol)
      fail(ErrorCode::NotPsd, "POVM element has a negative eigenvalue");
    sum += e;
  }
  if (sum.max_abs_diff(ComplexMatrix::identity(dim)) > kCompletenessTol)
    fail(ErrorCode::NotCompleteToIdentity,
         "POVM elements do not sum to the identity");

  Measurement m;
  m.label = std::move(label);
  m.dim = dim;
  m.kind = MeasurementKind::Povm;
  m.elements = elements;
  return m;
}

std::size_t MeasurementSet::pool_size() const {
  std::size_t n = 0;
  for (const auto& m : measurements) n += m.outcomes();
  return n;
}

MeasurementSet make_measurement_set(std::vector<Measurement> measurements,
                                    RVector setting_weights) {
  if (measurements.empty())
    fail(ErrorCode::BadParameter, "measurement set is empty");
  const std::size_t dim = measurements.front().dim;
  for (const auto& m : measurements)
    if (m.dim != dim)
      fail(ErrorCode::DimensionMismatch,
           "measurements act on different dimensions");
  const std::size_t n = measurements.size();
  if (setting_weights.empty())
    setting_weights.assign(n, 1.0 / static_cast<double>(n));
  if (setting_weights.size() != n)
    fail(ErrorCode::LengthMismatch, "one weight per setting required");
  double total = 0.0;
  for (double w : setting_weights) {
    if (w < 0.0)
      fail(ErrorCode::NegativeComponent, "setting weight is negative");
    total += w;
  }
  if (std::abs(total - 1.0) > kWeightSumTol)
    fail(ErrorCode::BadParameter, "setting weights do not sum to 1");
  return MeasurementSet{dim, std::move(measurements),
                        std::move(setting_weights)};
}

RVector born_probabilities(const DensityState& state, const Measurement& m) {
  if (state.dim != m.dim)
    fail(ErrorCode::DimensionMismatch,
         "state and measurement dimensions differ");
  RVector p(m.outcomes());
  double total = 0.0;
  for (std::size_t a = 0; a < m.outcomes(); ++a) {
    double v = (m.elements[a] * state.matrix).trace().real();
    if (v < -kPsdTol || v > 1.0 + kPsdTol)
      fail(ErrorCode::BadParameter, "Born probability outside [0, 1]");
    p[a] = std::clamp(v, 0.0, 1.0);
    total += p[a];
  }
  if (std::abs(total - 1.0) > kTraceTol)
    fail(ErrorCode::BadParameter, "Born probabilities do not sum to 1");
  return p;
}

ComplexMatrix partial_trace_a(const ComplexMatrix& m, std::size_t dim_a,
                              std::size_t dim_b) {
  if (m.rows() != dim_a * dim_b || !m.square())
    fail(ErrorCode::BadFactorization, "operator does not match the split");
  ComplexMatrix out(dim_b, dim_b);
  for (std::size_t i = 0; i < dim_a; ++i)
    for (std::size_t alpha = 0; alpha < dim_b; ++alpha)
      for (std::size_t beta = 0; beta < dim_b; ++beta)
        out(alpha, beta) += m(i * dim_b + alpha, i * dim_b + beta);
  return out;
}

Assemblage conditional_assemblage(const DensityState& rho_ab,
                                  const MeasurementSet& alice_set) {
  const std::size_t dim_a = alice_set.dim;
  std::size_t dim_b = 0;
  if (rho_ab.split) {
    if (rho_ab.split->first != dim_a)
      fail(ErrorCode::BadFactorization,
           "Alice's measurements do not act on the declared A factor");
    dim_b = rho_ab.split->second;
  } else {
    if (dim_a == 0 || rho_ab.dim % dim_a != 0)
      fail(ErrorCode::BadFactorization,
           "state dimension is not a multiple of Alice's dimension");
    dim_b = rho_ab.dim / dim_a;
  }
  if (dim_a * dim_b != rho_ab.dim)
    fail(ErrorCode::BadFactorization,
         "declared split inconsistent with total dimension");

  Assemblage asm_out;
  asm_out.dim = dim_b;
  asm_out.entries.reserve(alice_set.settings());
  for (const auto& meas : alice_set.measurements) {
    std::vector<ComplexMatrix> row;
    row.reserve(meas.outcomes());
    ComplexMatrix reduced(dim_b, dim_b);
    double trace_sum = 0.0;
    for (const auto& element : meas.elements) {
      // sigma_{alpha beta} = sum_{i,k} Pi_{ik} rho_{(k alpha),(i beta)}
      ComplexMatrix sigma(dim_b, dim_b);
      for (std::size_t i = 0; i < dim_a; ++i)
        for (std::size_t k = 0; k < dim_a; ++k) {
          const cdouble pik = element(i, k);
          if (pik == cdouble(0.0, 0.0)) continue;
          for (std::size_t alpha = 0; alpha < dim_b; ++alpha)
            for (std::size_t beta = 0; beta < dim_b; ++beta)
              sigma(alpha, beta) +=
                  pik * rho_ab.matrix(k * dim_b + alpha, i * dim_b + beta);
        }
      if (min_eigenvalue(sigma) < -kPsdTol)
        fail(ErrorCode::NotPsd, "conditional state is not PSD");
      const double tr = sigma.trace().real();
      if (tr < -kPsdTol || tr > 1.0 + kPsdTol)
        fail(ErrorCode::BadParameter, "conditional state trace outside [0, 1]");
      trace_sum += tr;
      reduced += sigma;
      row.push_back(std::move(sigma));
    }
    if (std::abs(trace_sum - 1.0) > kTraceTol)
      fail(ErrorCode::BadParameter,
           "conditional traces do not sum to 1 for a setting");
    if (!asm_out.entries.empty()) {
      // no-signaling: each setting leaves the same reduced state behind
      ComplexMatrix first_reduced(dim_b, dim_b);
      for (const auto& s : asm_out.entries.front()) first_reduced += s;
      if (reduced.max_abs_diff(first_reduced) > kNoSignalingTol)
        fail(ErrorCode::BadParameter, "assemblage violates no-signaling");
    }
    asm_out.entries.push_back(std::move(row));
  }
  return asm_out;
}

DensityState werner_state(WernerFamily family, double p) {
  if (!(p >= 0.0 && p <= 1.0))
    fail(ErrorCode::BadParameter, "Werner mixing parameter outside [0, 1]");
  if (family == WernerFamily::Qubit) {
    CVector singlet(4, 0.0);
    singlet[1] = 1.0 / std::sqrt(2.0);   // |01>
    singlet[2] = -1.0 / std::sqrt(2.0);  // |10>
    ComplexMatrix rho = outer(singlet, singlet);
    rho *= p;
    rho += ((1.0 - p) / 4.0) * ComplexMatrix::identity(4);
    return make_density_state(std::move(rho), "werner-qubit",
                              std::make_pair<std::size_t, std::size_t>(2, 2));
  }
  CVector psi(9, 0.0);
  psi[0] = psi[4] = psi[8] = 1.0 / std::sqrt(3.0);  // |00>, |11>, |22>
  ComplexMatrix rho = outer(psi, psi);
  rho *= p;
  rho += ((1.0 - p) / 9.0) * ComplexMatrix::identity(9);
  return make_density_state(std::move(rho), "werner-qutrit",
                            std::make_pair<std::size_t, std::size_t>(3, 3));
}

DensityState random_state(std::size_t dim, StatePurity purity,
                          std::uint64_t seed) {
  if (dim < 2) fail(ErrorCode::BadParameter, "dimension must be at least 2");
  Rng rng(seed);
  if (purity == StatePurity::Pure) {
    const CVector v = rng.unit_vector(dim);
    return make_density_state(outer(v, v), "random-pure");
  }
  ComplexMatrix g(dim, dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) g(i, j) = rng.complex_gaussian();
  ComplexMatrix rho = g * g.dagger();
  rho *= 1.0 / rho.trace().real();
  return make_density_state(std::move(rho), "random-mixed");
}

Measurement random_projective_measurement(std::size_t dim, Rng& rng) {
  // Gram-Schmidt on Gaussian columns; restart a column in the measure-zero
  // event it degenerates.
  std::vector<CVector> basis;
  while (basis.size() < dim) {
    CVector v(dim);
    for (auto& e : v) e = rng.complex_gaussian();
    for (const auto& u : basis) {
      const cdouble c = inner(u, v);
      for (std::size_t i = 0; i < dim; ++i) v[i] -= c * u[i];
    }
    if (norm(v) < 1e-8) continue;
    normalize(v);
    basis.push_back(std::move(v));
  }
  return make_projective_measurement(basis, "random-basis");
}

namespace {

CVector ket(std::initializer_list<cdouble> entries) { return CVector(entries); }

}  // namespace

MeasurementSet pauli_zx_set() {
  const double r = 1.0 / std::sqrt(2.0);
  auto z = make_projective_measurement({ket({1, 0}), ket({0, 1})}, "sigma-z");
  auto x = make_projective_measurement({ket({r, r}), ket({r, -r})}, "sigma-x");
  return make_measurement_set({std::move(z), std::move(x)});
}

MeasurementSet pauli_zx_anti_set() {
  const double r = 1.0 / std::sqrt(2.0);
  auto z = make_projective_measurement({ket({0, 1}), ket({1, 0})}, "sigma-z-anti");
  auto x = make_projective_measurement({ket({r, -r}), ket({r, r})}, "sigma-x-anti");
  return make_measurement_set({std::move(z), std::move(x)});
}

MeasurementSet gellmann_148_set() {
  const double r = 1.0 / std::sqrt(2.0);
  auto m1 = make_projective_measurement(
      {ket({r, r, 0}), ket({r, -r, 0}), ket({0, 0, 1})}, "lambda-1");
  auto m4 = make_projective_measurement(
      {ket({r, 0, r}), ket({r, 0, -r}), ket({0, 1, 0})}, "lambda-4");
  auto m8 = make_projective_measurement(
      {ket({1, 0, 0}), ket({0, 1, 0}), ket({0, 0, 1})}, "lambda-8");
  return make_measurement_set({std::move(m1), std::move(m4), std::move(m8)});
}

MeasurementSet fig2_set(double theta) {
  const double r = 1.0 / std::sqrt(2.0);
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  auto m1 = make_projective_measurement(
      {ket({1, 0, 0}), ket({0, 1, 0}), ket({0, 0, 1})}, "m1");
  auto m2 = make_projective_measurement(
      {ket({1, 0, 0}), ket({0, r, r}), ket({0, r, -r})}, "m2");
  auto m3 = make_projective_measurement(
      {ket({c, 0, s}), ket({0, 1, 0}), ket({-s, 0, c})}, "m3");
  return make_measurement_set({std::move(m1), std::move(m2), std::move(m3)});
}

}  // namespace qbound

#include "qbound/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "qbound/bounds.hpp"
#include "qbound/eigen.hpp"
#include "qbound/rng.hpp"

namespace qbound {

namespace {

void check_outcomes(const MeasurementSet& set,
                    const std::vector<std::size_t>& a) {
  if (a.size() != set.settings())
    fail(ErrorCode::SettingCountMismatch, "one outcome per setting required");
  for (std::size_t x = 0; x < a.size(); ++x)
    if (a[x] >= set.measurements[x].outcomes())
      fail(ErrorCode::BadParameter, "outcome index out of range");
}

// Permutations act on outcome labels and must be bijections.
void check_permutation(const std::vector<std::size_t>& perm) {
  const std::size_t d = perm.size();
  std::vector<bool> seen(d, false);
  for (std::size_t v : perm) {
    if (v >= d || seen[v])
      fail(ErrorCode::BadParameter, "permutation is not a bijection");
    seen[v] = true;
  }
}

double element_probability(const ComplexMatrix& element,
                           const ComplexMatrix& rho) {
  return (element * rho).trace().real();
}

}  // namespace

LhsModel make_lhs_model(RVector hidden_weights,
                        std::vector<DensityState> hidden_states,
                        std::vector<std::vector<RVector>> response) {
  if (hidden_weights.size() != hidden_states.size() ||
      hidden_weights.size() != response.size())
    fail(ErrorCode::LengthMismatch,
         "weights, states and response tables must align");
  double total = 0.0;
  for (double w : hidden_weights) {
    if (w < 0.0) fail(ErrorCode::NegativeComponent, "hidden weight negative");
    total += w;
  }
  if (std::abs(total - 1.0) > kWeightSumTol)
    fail(ErrorCode::BadParameter, "hidden weights do not sum to 1");
  for (const auto& table : response)
    for (const auto& row : table) {
      double s = 0.0;
      for (double p : row) {
        if (p < 0.0 || p > 1.0)
          fail(ErrorCode::BadParameter, "response probability outside [0, 1]");
        s += p;
      }
      if (std::abs(s - 1.0) > kWeightSumTol)
        fail(ErrorCode::BadParameter, "response row does not sum to 1");
    }
  return LhsModel{std::move(hidden_weights), std::move(hidden_states),
                  std::move(response)};
}

double quantum_functional(const Assemblage& assemblage,
                          const MeasurementSet& bob_set) {
  if (assemblage.dim != bob_set.dim)
    fail(ErrorCode::DimensionMismatch,
         "assemblage and measurement dimensions differ");
  if (assemblage.entries.size() != bob_set.settings())
    fail(ErrorCode::SettingCountMismatch,
         "assemblage settings do not match Bob's measurements");
  double total = 0.0;
  for (std::size_t x = 0; x < bob_set.settings(); ++x) {
    const auto& meas = bob_set.measurements[x];
    if (assemblage.entries[x].size() != meas.outcomes())
      fail(ErrorCode::SettingCountMismatch,
           "assemblage outcomes do not match Bob's elements");
    for (std::size_t a = 0; a < meas.outcomes(); ++a)
      total += (meas.elements[a] * assemblage.entries[x][a]).trace().real();
  }
  return total;
}

double quantum_functional_joint(const DensityState& rho_ab,
                                const MeasurementSet& alice_set,
                                const MeasurementSet& bob_set) {
  if (alice_set.settings() != bob_set.settings())
    fail(ErrorCode::SettingCountMismatch, "setting counts differ");
  if (alice_set.dim * bob_set.dim != rho_ab.dim)
    fail(ErrorCode::DimensionMismatch, "state does not match the two sides");
  double total = 0.0;
  for (std::size_t x = 0; x < alice_set.settings(); ++x) {
    const auto& am = alice_set.measurements[x];
    const auto& bm = bob_set.measurements[x];
    if (am.outcomes() != bm.outcomes())
      fail(ErrorCode::SettingCountMismatch, "outcome counts differ");
    for (std::size_t a = 0; a < am.outcomes(); ++a) {
      const ComplexMatrix joint = kron(am.elements[a], bm.elements[a]);
      total += (joint * rho_ab.matrix).trace().real();
    }
  }
  return total;
}

double lhs_functional(const LhsModel& model, const MeasurementSet& bob_set) {
  double total = 0.0;
  for (std::size_t l = 0; l < model.hidden_weights.size(); ++l) {
    if (model.hidden_states[l].dim != bob_set.dim)
      fail(ErrorCode::DimensionMismatch, "hidden state dimension mismatch");
    const auto& table = model.response[l];
    if (table.size() != bob_set.settings())
      fail(ErrorCode::SettingCountMismatch, "response table settings mismatch");
    double contribution = 0.0;
    for (std::size_t x = 0; x < bob_set.settings(); ++x) {
      const auto& meas = bob_set.measurements[x];
      if (table[x].size() != meas.outcomes())
        fail(ErrorCode::SettingCountMismatch, "response table outcome mismatch");
      for (std::size_t a = 0; a < meas.outcomes(); ++a)
        contribution +=
            table[x][a] *
            element_probability(meas.elements[a], model.hidden_states[l].matrix);
    }
    total += model.hidden_weights[l] * contribution;
  }
  return total;
}

double separable_functional(const RVector& weights,
                            const std::vector<DensityState>& alice_states,
                            const std::vector<DensityState>& bob_states,
                            const MeasurementSet& alice_set,
                            const MeasurementSet& bob_set) {
  if (weights.size() != alice_states.size() ||
      weights.size() != bob_states.size())
    fail(ErrorCode::LengthMismatch, "ensemble parts must align");
  if (alice_set.settings() != bob_set.settings())
    fail(ErrorCode::SettingCountMismatch, "setting counts differ");
  double wsum = 0.0;
  for (double w : weights) wsum += w;
  if (std::abs(wsum - 1.0) > kWeightSumTol)
    fail(ErrorCode::BadParameter, "ensemble weights do not sum to 1");

  double total = 0.0;
  for (std::size_t l = 0; l < weights.size(); ++l) {
    for (std::size_t x = 0; x < alice_set.settings(); ++x) {
      const auto& am = alice_set.measurements[x];
      const auto& bm = bob_set.measurements[x];
      if (am.outcomes() != bm.outcomes())
        fail(ErrorCode::SettingCountMismatch, "outcome counts differ");
      const RVector pa = born_probabilities(alice_states[l], am);
      const RVector qb = born_probabilities(bob_states[l], bm);
      for (std::size_t a = 0; a < am.outcomes(); ++a)
        total += weights[l] * pa[a] * qb[a];
    }
  }
  return total;
}

namespace {

// Best per-setting outcome reordering of Bob's elements against the
// assemblage row; settings are independent in S_Q so each maximizes alone.
double best_pairing_value(const std::vector<ComplexMatrix>& sigma_row,
                          const Measurement& meas) {
  const std::size_t d = meas.outcomes();
  if (d > kMaxPermutationDim)
    fail(ErrorCode::DTooLarge, "too many outcomes for permutation search");
  std::vector<std::size_t> perm(d);
  std::iota(perm.begin(), perm.end(), 0);
  double best = -1.0;
  do {
    double v = 0.0;
    for (std::size_t a = 0; a < d; ++a)
      v += (meas.elements[perm[a]] * sigma_row[a]).trace().real();
    best = std::max(best, v);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace

WitnessReport witness(const DensityState& rho_ab,
                      const MeasurementSet& alice_set,
                      const MeasurementSet& bob_set, bool maximize_pairing) {
  const Assemblage assemblage = conditional_assemblage(rho_ab, alice_set);

  WitnessReport report;
  if (maximize_pairing) {
    if (assemblage.entries.size() != bob_set.settings())
      fail(ErrorCode::SettingCountMismatch,
           "assemblage settings do not match Bob's measurements");
    double total = 0.0;
    for (std::size_t x = 0; x < bob_set.settings(); ++x)
      total +=
          best_pairing_value(assemblage.entries[x], bob_set.measurements[x]);
    report.s_q = total;
  } else {
    report.s_q = quantum_functional(assemblage, bob_set);
  }

  report.steering_bound = steering_bound(bob_set);
  report.entanglement_bound = entanglement_bound(alice_set, bob_set);
  bool projective = bob_set.settings() >= 2;
  for (const auto& m : bob_set.measurements)
    projective &= m.kind == MeasurementKind::ProjectiveBasis;
  if (projective) report.rutkowski_bound = rutkowski_bound(bob_set);

  report.steering_margin = report.s_q - report.steering_bound;
  report.entanglement_margin = report.s_q - report.entanglement_bound;
  report.steerable = report.steering_margin > kViolationMargin;
  report.entangled = report.entanglement_margin > kViolationMargin;
  return report;
}

double zeta_quantum(const MeasurementSet& alice_set,
                    const MeasurementSet& bob_set,
                    const std::vector<RVector>& joint_weights,
                    const std::vector<std::size_t>& a,
                    const std::vector<std::size_t>& b) {
  check_outcomes(alice_set, a);
  check_outcomes(bob_set, b);
  if (joint_weights.size() != alice_set.settings())
    fail(ErrorCode::LengthMismatch, "joint weight rows must match settings");
  double total = 0.0;
  for (const auto& row : joint_weights) {
    if (row.size() != bob_set.settings())
      fail(ErrorCode::LengthMismatch, "joint weight columns must match settings");
    for (double w : row) {
      if (w < 0.0) fail(ErrorCode::NegativeComponent, "joint weight negative");
      total += w;
    }
  }
  if (std::abs(total - 1.0) > kWeightSumTol)
    fail(ErrorCode::BadParameter, "joint weights do not sum to 1");

  const std::size_t dim = alice_set.dim * bob_set.dim;
  ComplexMatrix m(dim, dim);
  for (std::size_t x = 0; x < alice_set.settings(); ++x)
    for (std::size_t y = 0; y < bob_set.settings(); ++y) {
      const double w = joint_weights[x][y];
      if (w == 0.0) continue;
      ComplexMatrix term = kron(alice_set.measurements[x].elements[a[x]],
                                bob_set.measurements[y].elements[b[y]]);
      term *= w;
      m += term;
    }
  return max_hermitian_eigenvalue(m);
}

double zeta_quantum_diagonal(const MeasurementSet& alice_set,
                             const MeasurementSet& bob_set,
                             const RVector& weights,
                             const std::vector<std::size_t>& a,
                             const std::vector<std::size_t>& permutation) {
  if (alice_set.settings() != bob_set.settings())
    fail(ErrorCode::SettingCountMismatch, "setting counts differ");
  check_outcomes(alice_set, a);
  const std::size_t n = alice_set.settings();
  if (weights.size() != n)
    fail(ErrorCode::LengthMismatch, "one weight per setting required");
  check_permutation(permutation);
  std::vector<RVector> joint(n, RVector(n, 0.0));
  std::vector<std::size_t> b(n);
  for (std::size_t x = 0; x < n; ++x) {
    joint[x][x] = weights[x];
    if (a[x] >= permutation.size())
      fail(ErrorCode::BadParameter, "permutation does not cover outcome");
    b[x] = permutation[a[x]];
  }
  return zeta_quantum(alice_set, bob_set, joint, a, b);
}

double zeta_fgur(const MeasurementSet& alice_set,
                 const std::vector<std::size_t>& a) {
  check_outcomes(alice_set, a);
  ComplexMatrix m(alice_set.dim, alice_set.dim);
  for (std::size_t x = 0; x < alice_set.settings(); ++x) {
    ComplexMatrix term = alice_set.measurements[x].elements[a[x]];
    term *= alice_set.setting_weights[x];
    m += term;
  }
  return max_hermitian_eigenvalue(m);
}

double zeta_separable(const MeasurementSet& alice_set,
                      const MeasurementSet& bob_set, const RVector& weights,
                      const std::vector<std::size_t>& a,
                      const std::vector<std::size_t>& permutation,
                      std::size_t restarts, std::uint64_t seed) {
  if (alice_set.settings() != bob_set.settings())
    fail(ErrorCode::SettingCountMismatch, "setting counts differ");
  check_outcomes(alice_set, a);
  const std::size_t n = alice_set.settings();
  if (weights.size() != n)
    fail(ErrorCode::LengthMismatch, "one weight per setting required");
  if (!permutation.empty()) check_permutation(permutation);

  std::vector<const ComplexMatrix*> alice_el(n);
  std::vector<const ComplexMatrix*> bob_el(n);
  for (std::size_t x = 0; x < n; ++x) {
    alice_el[x] = &alice_set.measurements[x].elements[a[x]];
    const std::size_t bx =
        permutation.empty() ? a[x] : permutation.at(a[x]);
    if (bx >= bob_set.measurements[x].outcomes())
      fail(ErrorCode::BadParameter, "permuted outcome out of range");
    bob_el[x] = &bob_set.measurements[x].elements[bx];
  }

  Rng rng(seed);
  double best = 0.0;
  for (std::size_t r = 0; r < std::max<std::size_t>(restarts, 1); ++r) {
    CVector beta = rng.unit_vector(bob_set.dim);
    double value = 0.0;
    for (std::size_t iter = 0; iter < kSeesawMaxIterations; ++iter) {
      // Alice step: top eigenvector of sum_x w_x <beta|Phi|beta> Pi
      ComplexMatrix ma(alice_set.dim, alice_set.dim);
      for (std::size_t x = 0; x < n; ++x) {
        ComplexMatrix term = *alice_el[x];
        term *= weights[x] * expectation(*bob_el[x], beta);
        ma += term;
      }
      const CVector alpha = top_eigenvector(ma);
      // Bob step
      ComplexMatrix mb(bob_set.dim, bob_set.dim);
      for (std::size_t x = 0; x < n; ++x) {
        ComplexMatrix term = *bob_el[x];
        term *= weights[x] * expectation(*alice_el[x], alpha);
        mb += term;
      }
      beta = top_eigenvector(mb);
      const double next = expectation(mb, beta);
      if (next - value < kSeesawGainTol) {
        value = std::max(value, next);
        break;
      }
      value = next;
    }
    best = std::max(best, value);
  }
  return best;
}

MajorizationVector omega_chain(const Measurement& alice_m,
                               const Measurement& bob_m, StateClass cls,
                               std::size_t restarts, std::uint64_t seed) {
  const std::size_t d = alice_m.outcomes();
  if (bob_m.outcomes() != d)
    fail(ErrorCode::SettingCountMismatch, "outcome counts differ");
  if (d > kMaxPermutationDim)
    fail(ErrorCode::DTooLarge, "outcome count exceeds the permutation limit");

  const MeasurementSet aset = make_measurement_set({alice_m});
  const MeasurementSet bset = make_measurement_set({bob_m});

  // per-pair bounds zeta(a -> b) for the single fixed setting
  std::vector<RVector> zeta(d, RVector(d, 0.0));
  std::uint64_t pair_seed = seed;
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) {
      if (cls == StateClass::Quantum) {
        zeta[a][b] = zeta_quantum(aset, bset, {{1.0}}, {a}, {b});
      } else {
        // transposition sending a -> b keeps the permutation a bijection
        std::vector<std::size_t> perm(d);
        std::iota(perm.begin(), perm.end(), 0);
        std::swap(perm[a], perm[b]);
        zeta[a][b] =
            zeta_separable(aset, bset, {1.0}, {a}, perm, restarts, ++pair_seed);
      }
    }

  // Omega_k: best sum of zeta over k outcomes with an injective assignment;
  // equivalently a max-weight size-k matching, found by direct enumeration.
  RVector omegas(d, 0.0);
  for (std::size_t k = 1; k <= d; ++k) {
    double best = 0.0;
    // enumerate k-subsets of rows, then injective column assignments
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      double sum = 0.0;
      std::vector<bool> taken(d, false);
      std::function<void(std::size_t)> assign = [&](std::size_t pos) {
        if (pos == k) {
          best = std::max(best, sum);
          return;
        }
        for (std::size_t b = 0; b < d; ++b) {
          if (taken[b]) continue;
          taken[b] = true;
          sum += zeta[idx[pos]][b];
          assign(pos + 1);
          sum -= zeta[idx[pos]][b];
          taken[b] = false;
        }
      };
      assign(0);
      std::size_t i = k;
      while (i > 0 && idx[i - 1] == d - k + (i - 1)) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    omegas[k - 1] = best;
  }
  for (std::size_t k = 1; k < d; ++k)
    omegas[k] = std::max(omegas[k], omegas[k - 1]);
  return omega_assemble(omegas);
}

double linear_steering_bound(const LinearInequalitySpec& spec,
                             const MeasurementSet& bob_set) {
  for (const auto& m : bob_set.measurements)
    if (m.kind != MeasurementKind::ProjectiveBasis)
      fail(ErrorCode::NotProjective, "linear bound needs projective bases");
  const std::size_t n = bob_set.settings();
  const std::size_t d = bob_set.dim;
  if (spec.coefficients.size() != n)
    fail(ErrorCode::LengthMismatch, "one coefficient per setting required");
  if (spec.outcome_values.size() != d)
    fail(ErrorCode::LengthMismatch, "one outcome value per outcome required");
  bool any_nonzero = false;
  for (double c : spec.coefficients) {
    if (!std::isfinite(c))
      fail(ErrorCode::BadParameter, "coefficient not finite");
    any_nonzero |= c != 0.0;
  }
  for (double b : spec.outcome_values)
    if (!std::isfinite(b)) fail(ErrorCode::BadParameter, "value not finite");
  if (!any_nonzero)
    fail(ErrorCode::BadParameter, "all coefficients are zero");

  RVector products;
  products.reserve(n * d);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t j = 0; j < d; ++j)
      products.push_back(spec.coefficients[x] * spec.outcome_values[j]);
  std::sort(products.begin(), products.end(), std::greater<double>());

  RVector w = w_from_s_sequence(s_sequence(bob_set)).components;
  w.resize(n * d, 0.0);
  double dot = 0.0;
  for (std::size_t i = 0; i < products.size(); ++i) dot += products[i] * w[i];
  return dot / static_cast<double>(n);
}

std::pair<MeasurementSet, MeasurementSet> werner_measurements(
    WernerFamily family) {
  if (family == WernerFamily::Qubit)
    return {pauli_zx_set(), pauli_zx_anti_set()};
  return {gellmann_148_set(), gellmann_148_set()};
}

double werner_quantum_functional(WernerFamily family, double p) {
  const auto [alice, bob] = werner_measurements(family);
  const DensityState rho = werner_state(family, p);
  return quantum_functional(conditional_assemblage(rho, alice), bob);
}

namespace {

// Smallest p whose witness flag is set, located by bisection.
double bisect_threshold(WernerFamily family, bool entanglement_flag) {
  const auto [alice, bob] = werner_measurements(family);
  double lo = 0.0, hi = 1.0;
  const WitnessReport at_hi = witness(werner_state(family, 1.0), alice, bob);
  if (!(entanglement_flag ? at_hi.entangled : at_hi.steerable))
    fail(ErrorCode::PreconditionFailed, "flag never set on the family");
  while (hi - lo > 1e-8) {
    const double mid = 0.5 * (lo + hi);
    const WitnessReport rep = witness(werner_state(family, mid), alice, bob);
    if (entanglement_flag ? rep.entangled : rep.steerable)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

WernerThresholds werner_thresholds(WernerFamily family) {
  const auto [alice, bob] = werner_measurements(family);
  const double steer = steering_bound(bob);
  const double ent = entanglement_bound(alice, bob);

  WernerThresholds t;
  // S_Q(p) is 1 + p (qubit) or 1 + 2p (qutrit); solve S_Q(p) = bound.
  if (family == WernerFamily::Qubit) {
    t.steering_closed = steer - 1.0;
    t.entanglement_closed = ent - 1.0;
  } else {
    t.steering_closed = (steer - 1.0) / 2.0;
    t.entanglement_closed = (ent - 1.0) / 2.0;
  }
  t.steering_bisected = bisect_threshold(family, false);
  t.entanglement_bisected = bisect_threshold(family, true);
  if (std::abs(t.steering_bisected - t.steering_closed) > 1e-6 ||
      std::abs(t.entanglement_bisected - t.entanglement_closed) > 1e-6)
    fail(ErrorCode::NoConvergence,
         "bisection and closed-form thresholds disagree");
  return t;
}

}  // namespace qbound

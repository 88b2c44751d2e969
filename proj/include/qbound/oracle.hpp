#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qbound/functionals.hpp"
#include "qbound/quantum.hpp"

namespace qbound {

struct OracleConfig {
  std::uint64_t seed = 42;
  std::size_t samples = 1000;
  // polar resolution per qubit factor; azimuth uses twice as many points,
  // so the default is a 200 x 100 sphere (accuracy roughly 1e-3)
  std::size_t grid_points = 100;
  double tolerance = 1e-9;
};

struct VerificationReport {
  std::string suite;
  std::size_t samples = 0;
  std::size_t violations = 0;
  // most positive (achieved - bound) observed; negative means safe
  double worst_margin = -1.0;
  std::uint64_t seed = 0;
};

// Plain bitmask-exhaustive subset maximum, deliberately implemented apart
// from the main enumeration path. Pool limit 18 (stricter than the main
// path).
double brute_subset_norm(const MeasurementSet& set, std::size_t k);

// Dense Bloch-sphere (theta, phi) x (theta, phi) grid evaluation of the
// product-state objective; a lower bound on the separable value with
// documented ~1e-3 resolution slack at the default grid.
double grid_zeta_separable(const MeasurementSet& alice_set,
                           const MeasurementSet& bob_set,
                           const std::vector<std::size_t>& a,
                           const std::vector<std::size_t>& permutation,
                           std::size_t grid_points);

// Max of the steering functional over all deterministic response tables
// crossed with the supplied hidden states (each taken with weight 1).
double enumerate_lhs_extremal(const MeasurementSet& bob_set,
                              const std::vector<DensityState>& hidden_states);

// Random states -> direct-sum Born vectors must be majorized by W.
VerificationReport sample_majorization_suite(const OracleConfig& config,
                                             const MeasurementSet& set);

// Composite suites behind the `verify` command. Each aggregates the oracle
// primitives over the builtin example sets.
VerificationReport verify_majorization(const OracleConfig& config);
VerificationReport verify_steering(const OracleConfig& config);
VerificationReport verify_entanglement(const OracleConfig& config);
VerificationReport verify_zeta(const OracleConfig& config);

// Seeded LHS-model generator shared by the steering suite and the tests;
// `index` 0..(all-deterministic-strategy count * hidden-state draws - 1)
// yields the extremal strategies, larger indices yield stochastic models.
LhsModel sampled_lhs_model(const MeasurementSet& bob_set, std::size_t index,
                           std::uint64_t seed);

// Random separable ensemble on the two sides of a family.
void sampled_separable_ensemble(std::size_t dim, std::size_t parts, Rng& rng,
                                RVector& weights,
                                std::vector<DensityState>& alice_states,
                                std::vector<DensityState>& bob_states);

}  // namespace qbound

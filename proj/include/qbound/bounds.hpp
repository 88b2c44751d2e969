#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "qbound/majorization.hpp"
#include "qbound/quantum.hpp"

namespace qbound {

inline constexpr std::size_t kMaxSubsetPool = 24;

// Distinct (setting, outcome) element picks, kept in lexicographic order.
struct SubsetSelection {
  std::vector<std::pair<std::size_t, std::size_t>> picks;
};

struct SpectrumWeightedBounds {
  RVector lambda;
  RVector s_sequence_lambda;
  double steering_bound_lambda = 0.0;
};

struct BoundReport {
  std::size_t dim = 0;
  std::size_t settings = 0;
  RVector s_sequence;              // s(1)..s(pool)
  MajorizationVector w_vector;     // first differences of s
  double steering_bound = 0.0;     // s(N)
  std::optional<double> entanglement_bound;  // when an Alice set is given
  std::optional<double> rutkowski_bound;     // projective sets only
  std::vector<SubsetSelection> argmax_subsets;  // argmax per k
  std::optional<std::pair<double, double>> violation_ratios;
  std::optional<SpectrumWeightedBounds> spectrum_weighted;
};

// Exact maximum over all k-element subsets of the pool of the largest
// eigenvalue of the summed elements. Ties resolve to the lexicographically
// smallest pick list. Exhaustive by contract; pools above 24 are refused.
std::pair<double, SubsetSelection> subset_norm(const MeasurementSet& set,
                                               std::size_t k);

// The whole ladder (s(1), ..., s(pool)).
RVector s_sequence(const MeasurementSet& set);
std::pair<RVector, std::vector<SubsetSelection>> s_sequence_with_argmax(
    const MeasurementSet& set);

// s(N): what any accumulation of local-hidden-state statistics can reach.
double steering_bound(const MeasurementSet& bob_set);

// W^A . W^B, the separable-model ceiling.
double entanglement_bound(const MeasurementSet& alice_set,
                          const MeasurementSet& bob_set);

// Reduced-spectrum-weighted ladder value: max over k-subsets of
// lambda (sorted desc) dotted with the sorted eigenvalues of the subset sum.
double spectrum_weighted_s(const MeasurementSet& set, const Spectrum& lambda,
                           std::size_t k);

// Largest |<phi_a|phi_b>| between two projective bases.
double overlap_c(const Measurement& mx, const Measurement& my);

// The maximal-overlap steering bound 1 + sum_i C_i it is compared against.
double rutkowski_bound(const MeasurementSet& bob_set);

// (N / steering_bound, N / entanglement_bound): guaranteed violation ratios.
std::pair<double, double> violation_ratios(std::size_t n_settings,
                                           double steering_bound,
                                           double entanglement_bound);

// Batch driver used by the CLI.
BoundReport bound_report(const MeasurementSet& bob_set,
                         const MeasurementSet* alice_set,
                         const Spectrum* lambda);

}  // namespace qbound

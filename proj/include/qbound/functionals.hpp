#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "qbound/majorization.hpp"
#include "qbound/quantum.hpp"

namespace qbound {

inline constexpr double kViolationMargin = 1e-9;
inline constexpr std::size_t kSeesawDefaultRestarts = 50;
inline constexpr std::size_t kSeesawMaxIterations = 500;
inline constexpr double kSeesawGainTol = 1e-12;
inline constexpr std::size_t kMaxPermutationDim = 7;

// Local-hidden-state model: hidden weights p(lambda), Bob-side states
// sigma_lambda, and response tables p_lambda(a|x).
struct LhsModel {
  RVector hidden_weights;
  std::vector<DensityState> hidden_states;
  // response[lambda][setting][outcome], each row a distribution
  std::vector<std::vector<RVector>> response;
};

LhsModel make_lhs_model(RVector hidden_weights,
                        std::vector<DensityState> hidden_states,
                        std::vector<std::vector<RVector>> response);

struct WitnessReport {
  double s_q = 0.0;
  double steering_bound = 0.0;
  double entanglement_bound = 0.0;
  std::optional<double> rutkowski_bound;
  bool steerable = false;
  bool entangled = false;
  double steering_margin = 0.0;
  double entanglement_margin = 0.0;
};

struct OutcomeTuple {
  std::vector<std::size_t> a;            // one outcome index per setting
  std::vector<std::size_t> permutation;  // bijection on outcome labels
};

// Linear inequality data: per-setting coefficients and the observable
// eigenvalues attached to Bob's outcomes.
struct LinearInequalitySpec {
  RVector coefficients;
  RVector outcome_values;
};

struct WernerThresholds {
  double steering_closed = 0.0;
  double entanglement_closed = 0.0;
  double steering_bisected = 0.0;
  double entanglement_bisected = 0.0;
};

// S_Q = sum_{x,a} Tr(Phi_x^a sigma_x^a); assemblage outcomes pair with Bob's
// elements by index.
double quantum_functional(const Assemblage& assemblage,
                          const MeasurementSet& bob_set);

// Same quantity through the joint operators sum Tr[(Pi (x) Phi) rho]; kept
// as an independent route for cross-checking.
double quantum_functional_joint(const DensityState& rho_ab,
                                const MeasurementSet& alice_set,
                                const MeasurementSet& bob_set);

// S_E for an explicit LHS model.
double lhs_functional(const LhsModel& model, const MeasurementSet& bob_set);

// S_S for an explicit separable ensemble.
double separable_functional(const RVector& weights,
                            const std::vector<DensityState>& alice_states,
                            const std::vector<DensityState>& bob_states,
                            const MeasurementSet& alice_set,
                            const MeasurementSet& bob_set);

// Full witness: assemblage -> S_Q -> comparison against the three bounds.
// With maximize_pairing, Bob's outcome order is optimized per setting before
// comparing (d! options per setting, d <= 7).
WitnessReport witness(const DensityState& rho_ab,
                      const MeasurementSet& alice_set,
                      const MeasurementSet& bob_set,
                      bool maximize_pairing = false);

// Largest eigenvalue of sum_{x,y} p(x,y) Pi_x^{a(x)} (x) Phi_y^{b(y)}; the
// exact supremum over all bipartite states.
double zeta_quantum(const MeasurementSet& alice_set,
                    const MeasurementSet& bob_set,
                    const std::vector<RVector>& joint_weights,
                    const std::vector<std::size_t>& a,
                    const std::vector<std::size_t>& b);

// Diagonal-weight convenience: pairs setting x with itself and outcome a(x)
// with permutation(a(x)).
double zeta_quantum_diagonal(const MeasurementSet& alice_set,
                             const MeasurementSet& bob_set,
                             const RVector& weights,
                             const std::vector<std::size_t>& a,
                             const std::vector<std::size_t>& permutation);

// Largest eigenvalue of sum_x p(x) Pi_x^{a(x)}: the single-system bound.
double zeta_fgur(const MeasurementSet& alice_set,
                 const std::vector<std::size_t>& a);

// Seesaw maximization over pure product states; a certified lower bound on
// the separable-class value (and never above the quantum value, up to
// eigensolver noise).
double zeta_separable(const MeasurementSet& alice_set,
                      const MeasurementSet& bob_set, const RVector& weights,
                      const std::vector<std::size_t>& a,
                      const std::vector<std::size_t>& permutation,
                      std::size_t restarts, std::uint64_t seed);

enum class StateClass { Quantum, Separable };

// Omega ladder for a fixed measurement pair: Omega_k maximizes the sum of
// per-pair zeta values over k outcomes with injective outcome assignments;
// returns the first-difference omega vector.
MajorizationVector omega_chain(const Measurement& alice_m,
                               const Measurement& bob_m, StateClass cls,
                               std::size_t restarts = kSeesawDefaultRestarts,
                               std::uint64_t seed = 1);

// Sorted-coefficient bound C.W^B/N for a linear steering inequality.
double linear_steering_bound(const LinearInequalitySpec& spec,
                             const MeasurementSet& bob_set);

// Closed-form Werner thresholds with a bisection cross-check on the witness
// flags; the two routes must agree to 1e-6.
WernerThresholds werner_thresholds(WernerFamily family);

// The measurement pair used by the Werner pipeline: Alice's set and Bob's
// outcome-paired set for the given family.
std::pair<MeasurementSet, MeasurementSet> werner_measurements(
    WernerFamily family);

// S_Q along the Werner family (equals 1 + p for the qubit pipeline and
// 1 + 2p for the qutrit pipeline).
double werner_quantum_functional(WernerFamily family, double p);

}  // namespace qbound

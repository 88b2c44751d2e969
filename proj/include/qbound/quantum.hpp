#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qbound/complex_matrix.hpp"
#include "qbound/eigen.hpp"

namespace qbound {

class Rng;

inline constexpr double kPsdTol = 1e-9;
inline constexpr double kTraceTol = 1e-9;
inline constexpr double kCompletenessTol = 1e-9;
inline constexpr double kOrthonormalTol = 1e-9;
inline constexpr double kWeightSumTol = 1e-12;
inline constexpr double kNoSignalingTol = 1e-8;

// Density matrix on a d-dimensional Hilbert space. For bipartite states the
// tensor split (dA, dB) is carried along, with A as the slow (left) factor.
struct DensityState {
  std::size_t dim = 0;
  ComplexMatrix matrix;
  std::string label;
  std::optional<std::pair<std::size_t, std::size_t>> split;
};

// Validates Hermiticity (1e-9), positivity (eigenvalues >= -1e-9) and unit
// trace (1e-9); throws on violation.
DensityState make_density_state(
    ComplexMatrix matrix, std::string label = {},
    std::optional<std::pair<std::size_t, std::size_t>> split = std::nullopt);

enum class MeasurementKind { ProjectiveBasis, Povm };

struct Measurement {
  std::string label;
  std::size_t dim = 0;
  MeasurementKind kind = MeasurementKind::ProjectiveBasis;
  std::vector<ComplexMatrix> elements;
  // ProjectiveBasis only: unit vectors whose rank-1 projectors are
  // `elements`, in outcome order.
  std::vector<CVector> vectors;

  std::size_t outcomes() const { return elements.size(); }
};

// A complete orthonormal basis; rejects non-orthonormal or incomplete
// vector lists.
Measurement make_projective_measurement(const std::vector<CVector>& vectors,
                                        std::string label = {});

// PSD elements summing to the identity.
Measurement make_povm(const std::vector<ComplexMatrix>& elements,
                      std::string label = {});

struct MeasurementSet {
  std::size_t dim = 0;
  std::vector<Measurement> measurements;
  RVector setting_weights;  // sums to 1; defaults to uniform

  std::size_t settings() const { return measurements.size(); }
  // total element count across settings (the subset pool size)
  std::size_t pool_size() const;
};

MeasurementSet make_measurement_set(std::vector<Measurement> measurements,
                                    RVector setting_weights = {});

// Subnormalized conditional states sigma[setting][outcome] on Bob's side.
struct Assemblage {
  std::size_t dim = 0;
  std::vector<std::vector<ComplexMatrix>> entries;
};

RVector born_probabilities(const DensityState& state, const Measurement& m);

// sigma_x^a = Tr_A[(Pi_x^a (x) 1) rho_AB] for every setting and outcome.
// Uses the state's declared split when present, otherwise infers
// (alice_set.dim, dim / alice_set.dim).
Assemblage conditional_assemblage(const DensityState& rho_ab,
                                  const MeasurementSet& alice_set);

enum class WernerFamily { Qubit, Qutrit };

// p * (entangled projector) + (1 - p) * (maximally mixed); the qubit family
// uses the singlet (|01> - |10>)/sqrt(2), the qutrit family
// (|00> + |11> + |22>)/sqrt(3).
DensityState werner_state(WernerFamily family, double p);

enum class StatePurity { Pure, Mixed };

// Seed-deterministic sampling: pure states come from normalized complex
// Gaussian vectors, mixed states from G G^dagger / Tr.
DensityState random_state(std::size_t dim, StatePurity purity,
                          std::uint64_t seed);

// Random complete projective measurement (Gram-Schmidt on Gaussian columns).
Measurement random_projective_measurement(std::size_t dim, Rng& rng);

// Partial trace over the A (slow) factor of a (dA*dB)-dimensional operator.
ComplexMatrix partial_trace_a(const ComplexMatrix& m, std::size_t dim_a,
                              std::size_t dim_b);

// ---- canonical example families ----

// sigma_z then sigma_x eigenbases on a qubit
MeasurementSet pauli_zx_set();
// same bases with outcome order matched to the singlet's anticorrelation
// ({|1>,|0>} and {|->,|+>}); this is Bob's side of the Werner qubit pipeline
MeasurementSet pauli_zx_anti_set();
// qutrit eigenbases of the Gell-Mann matrices lambda_1 and lambda_4 plus the
// computational basis (the spectrally degenerate lambda_8 is always
// specified by this explicit decomposition)
MeasurementSet gellmann_148_set();
// three-setting qutrit family with one setting rotated by theta in the
// (0,2) coordinate plane; at theta = 0 all three settings share (1,0,0)
MeasurementSet fig2_set(double theta);

}  // namespace qbound

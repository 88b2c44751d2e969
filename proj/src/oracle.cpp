#include "qbound/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "qbound/bounds.hpp"
#include "qbound/eigen.hpp"
#include "qbound/rng.hpp"

namespace qbound {

namespace {

constexpr std::size_t kBrutePoolLimit = 18;
constexpr std::size_t kStrategyLimit = 100000;
constexpr std::size_t kGridLimit = 400;

}  // namespace

double brute_subset_norm(const MeasurementSet& set, std::size_t k) {
  std::vector<const ComplexMatrix*> pool;
  for (const auto& m : set.measurements)
    for (const auto& e : m.elements) pool.push_back(&e);
  if (pool.size() > kBrutePoolLimit)
    fail(ErrorCode::PoolTooLarge, "brute-force pool exceeds 18 elements");
  if (k < 1 || k > pool.size())
    fail(ErrorCode::KOutOfRange, "subset size outside 1..pool");

  double best = -std::numeric_limits<double>::infinity();
  const std::uint32_t limit = 1u << pool.size();
  for (std::uint32_t mask = 1; mask < limit; ++mask) {
    if (std::popcount(mask) != static_cast<int>(k)) continue;
    ComplexMatrix sum(set.dim, set.dim);
    for (std::size_t i = 0; i < pool.size(); ++i)
      if (mask & (1u << i)) sum += *pool[i];
    best = std::max(best, max_hermitian_eigenvalue(sum));
  }
  return best;
}

double grid_zeta_separable(const MeasurementSet& alice_set,
                           const MeasurementSet& bob_set,
                           const std::vector<std::size_t>& a,
                           const std::vector<std::size_t>& permutation,
                           std::size_t grid_points) {
  if (alice_set.dim != 2 || bob_set.dim != 2)
    fail(ErrorCode::DimTooLarge, "grid oracle covers qubits only");
  if (alice_set.settings() != bob_set.settings())
    fail(ErrorCode::SettingCountMismatch, "setting counts differ");
  if (a.size() != alice_set.settings())
    fail(ErrorCode::SettingCountMismatch, "one outcome per setting required");
  if (grid_points < 2 || grid_points > kGridLimit)
    fail(ErrorCode::BadParameter, "grid resolution outside 2..400");

  const std::size_t n = alice_set.settings();
  std::vector<const ComplexMatrix*> alice_el(n);
  std::vector<const ComplexMatrix*> bob_el(n);
  for (std::size_t x = 0; x < n; ++x) {
    alice_el[x] = &alice_set.measurements[x].elements.at(a[x]);
    const std::size_t bx = permutation.empty() ? a[x] : permutation.at(a[x]);
    bob_el[x] = &bob_set.measurements[x].elements.at(bx);
  }

  // Bloch states (cos(t/2), e^{i phi} sin(t/2)) on a polar x azimuth grid.
  const std::size_t n_polar = grid_points;
  const std::size_t n_azimuth = 2 * grid_points;
  std::vector<CVector> states;
  states.reserve(n_polar * n_azimuth);
  for (std::size_t i = 0; i < n_polar; ++i) {
    const double theta = M_PI * (static_cast<double>(i) + 0.5) /
                         static_cast<double>(n_polar);
    for (std::size_t j = 0; j < n_azimuth; ++j) {
      const double phi =
          2.0 * M_PI * static_cast<double>(j) / static_cast<double>(n_azimuth);
      states.push_back(
          {std::cos(theta / 2.0),
           cdouble(std::cos(phi), std::sin(phi)) * std::sin(theta / 2.0)});
    }
  }

  // Precompute per-state Born weights for each setting on both sides.
  const std::size_t m = states.size();
  std::vector<RVector> u(m, RVector(n)), v(m, RVector(n));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t x = 0; x < n; ++x) {
      u[i][x] = alice_set.setting_weights[x] * expectation(*alice_el[x], states[i]);
      v[i][x] = expectation(*bob_el[x], states[i]);
    }

  double best = 0.0;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      double s = 0.0;
      for (std::size_t x = 0; x < n; ++x) s += u[i][x] * v[j][x];
      best = std::max(best, s);
    }
  return best;
}

double enumerate_lhs_extremal(const MeasurementSet& bob_set,
                              const std::vector<DensityState>& hidden_states) {
  const std::size_t n = bob_set.settings();
  std::size_t strategies = 1;
  for (std::size_t x = 0; x < n; ++x) {
    strategies *= bob_set.measurements[x].outcomes();
    if (strategies > kStrategyLimit)
      fail(ErrorCode::TooManyStrategies, "deterministic table count too large");
  }

  double best = 0.0;
  for (const auto& sigma : hidden_states) {
    // Born weights once per state
    std::vector<RVector> q(n);
    for (std::size_t x = 0; x < n; ++x)
      q[x] = born_probabilities(sigma, bob_set.measurements[x]);
    for (std::size_t code = 0; code < strategies; ++code) {
      std::size_t rest = code;
      double value = 0.0;
      for (std::size_t x = 0; x < n; ++x) {
        const std::size_t d = bob_set.measurements[x].outcomes();
        value += q[x][rest % d];
        rest /= d;
      }
      best = std::max(best, value);
    }
  }
  return best;
}

VerificationReport sample_majorization_suite(const OracleConfig& config,
                                             const MeasurementSet& set) {
  VerificationReport report;
  report.suite = "direct-sum-majorization";
  report.samples = config.samples;
  report.seed = config.seed;
  report.worst_margin = -std::numeric_limits<double>::infinity();

  const RVector w = w_from_s_sequence(s_sequence(set)).components;
  RVector wd = w;
  std::sort(wd.begin(), wd.end(), std::greater<double>());
  RVector w_prefix(wd.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < wd.size(); ++i) {
    acc += wd[i];
    w_prefix[i] = acc;
  }

  Rng rng(config.seed);
  for (std::size_t s = 0; s < config.samples; ++s) {
    const StatePurity purity =
        (s % 2 == 0) ? StatePurity::Pure : StatePurity::Mixed;
    const DensityState rho = random_state(set.dim, purity, rng.integer(1u << 30));
    std::vector<RVector> parts;
    parts.reserve(set.settings());
    for (const auto& meas : set.measurements)
      parts.push_back(born_probabilities(rho, meas));
    RVector q = direct_sum(parts);
    std::sort(q.begin(), q.end(), std::greater<double>());
    double qsum = 0.0;
    double margin = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < q.size() && i < w_prefix.size(); ++i) {
      qsum += q[i];
      margin = std::max(margin, qsum - w_prefix[i]);
    }
    report.worst_margin = std::max(report.worst_margin, margin);
    if (margin > config.tolerance) ++report.violations;
  }
  return report;
}

namespace {

std::size_t deterministic_strategy_count(const MeasurementSet& set) {
  std::size_t n = 1;
  for (const auto& m : set.measurements) n *= m.outcomes();
  return n;
}

}  // namespace

LhsModel sampled_lhs_model(const MeasurementSet& bob_set, std::size_t index,
                           std::uint64_t seed) {
  const std::size_t n = bob_set.settings();
  const std::size_t strategies = deterministic_strategy_count(bob_set);
  constexpr std::size_t kStatesPerStrategy = 20;
  Rng rng(seed + 7919 * index);

  if (index < strategies * kStatesPerStrategy) {
    // one deterministic extremal strategy with one random hidden state
    const std::size_t code = index / kStatesPerStrategy;
    std::vector<std::vector<RVector>> table(1);
    std::size_t rest = code;
    for (std::size_t x = 0; x < n; ++x) {
      const std::size_t d = bob_set.measurements[x].outcomes();
      RVector row(d, 0.0);
      row[rest % d] = 1.0;
      rest /= d;
      table[0].push_back(std::move(row));
    }
    const StatePurity purity =
        (index % 2 == 0) ? StatePurity::Pure : StatePurity::Mixed;
    return make_lhs_model({1.0},
                          {random_state(bob_set.dim, purity,
                                        rng.integer(1u << 30))},
                          std::move(table));
  }

  // stochastic model with a few hidden values
  const std::size_t parts = 2 + rng.integer(3);
  RVector weights = rng.probability_vector(parts);
  std::vector<DensityState> states;
  std::vector<std::vector<RVector>> tables(parts);
  for (std::size_t l = 0; l < parts; ++l) {
    const StatePurity purity =
        (rng.integer(2) == 0) ? StatePurity::Pure : StatePurity::Mixed;
    states.push_back(random_state(bob_set.dim, purity, rng.integer(1u << 30)));
    for (std::size_t x = 0; x < n; ++x)
      tables[l].push_back(
          rng.probability_vector(bob_set.measurements[x].outcomes()));
  }
  return make_lhs_model(std::move(weights), std::move(states),
                        std::move(tables));
}

void sampled_separable_ensemble(std::size_t dim, std::size_t parts, Rng& rng,
                                RVector& weights,
                                std::vector<DensityState>& alice_states,
                                std::vector<DensityState>& bob_states) {
  weights = rng.probability_vector(parts);
  alice_states.clear();
  bob_states.clear();
  for (std::size_t l = 0; l < parts; ++l) {
    const StatePurity pa =
        (rng.integer(2) == 0) ? StatePurity::Pure : StatePurity::Mixed;
    const StatePurity pb =
        (rng.integer(2) == 0) ? StatePurity::Pure : StatePurity::Mixed;
    alice_states.push_back(random_state(dim, pa, rng.integer(1u << 30)));
    bob_states.push_back(random_state(dim, pb, rng.integer(1u << 30)));
  }
}

VerificationReport verify_majorization(const OracleConfig& config) {
  VerificationReport report;
  report.suite = "majorization";
  report.seed = config.seed;
  report.worst_margin = -std::numeric_limits<double>::infinity();

  // Random (p, q, w) triples with p majorized by w: p is a convex mix of
  // permutations of w, so the sorted-dot bound must dominate the raw dot.
  Rng rng(config.seed);
  for (std::size_t s = 0; s < config.samples; ++s) {
    const std::size_t n = 2 + rng.integer(6);
    RVector w(n);
    for (auto& x : w) x = rng.uniform();
    RVector p(n, 0.0);
    const std::size_t mixes = 1 + rng.integer(4);
    RVector mix_weights = rng.probability_vector(mixes);
    for (std::size_t t = 0; t < mixes; ++t) {
      RVector perm = w;
      for (std::size_t i = n - 1; i > 0; --i)
        std::swap(perm[i], perm[rng.integer(i + 1)]);
      for (std::size_t i = 0; i < n; ++i) p[i] += mix_weights[t] * perm[i];
    }
    RVector q(n);
    for (auto& x : q) x = rng.uniform();
    const auto [lhs, rhs] = dot_sorted_bound(p, q, w);
    report.worst_margin = std::max(report.worst_margin, lhs - rhs);
    if (lhs > rhs + config.tolerance) ++report.violations;
    ++report.samples;
  }

  for (const auto& set : {pauli_zx_set(), gellmann_148_set()}) {
    OracleConfig sub = config;
    sub.seed = config.seed + 1;
    const VerificationReport r = sample_majorization_suite(sub, set);
    report.samples += r.samples;
    report.violations += r.violations;
    report.worst_margin = std::max(report.worst_margin, r.worst_margin);
  }
  return report;
}

VerificationReport verify_steering(const OracleConfig& config) {
  VerificationReport report;
  report.suite = "steering";
  report.seed = config.seed;
  report.worst_margin = -std::numeric_limits<double>::infinity();

  for (const auto& bob : {pauli_zx_set(), gellmann_148_set()}) {
    const double bound = steering_bound(bob);
    for (std::size_t i = 0; i < config.samples; ++i) {
      const LhsModel model = sampled_lhs_model(bob, i, config.seed);
      const double value = lhs_functional(model, bob);
      report.worst_margin = std::max(report.worst_margin, value - bound);
      if (value > bound + config.tolerance) ++report.violations;
      ++report.samples;
    }
    // saturation: hidden states aligned with the argmax subset eigenvectors
    const auto ladder = s_sequence_with_argmax(bob);
    std::vector<DensityState> aligned;
    for (const auto& sel : ladder.second) {
      ComplexMatrix sum(bob.dim, bob.dim);
      for (const auto& [x, a] : sel.picks)
        sum += bob.measurements[x].elements[a];
      const CVector top = top_eigenvector(sum);
      aligned.push_back(make_density_state(outer(top, top), "aligned"));
    }
    const double reached = enumerate_lhs_extremal(bob, aligned);
    report.worst_margin = std::max(report.worst_margin, reached - bound);
    if (reached > bound + config.tolerance) ++report.violations;
    if (reached < bound - 1e-6) ++report.violations;  // tightness failed
    ++report.samples;
  }
  return report;
}

VerificationReport verify_entanglement(const OracleConfig& config) {
  VerificationReport report;
  report.suite = "entanglement";
  report.seed = config.seed;
  report.worst_margin = -std::numeric_limits<double>::infinity();

  Rng rng(config.seed);
  const auto qubit = werner_measurements(WernerFamily::Qubit);
  const auto qutrit = werner_measurements(WernerFamily::Qutrit);
  for (const auto& [alice, bob] : {qubit, qutrit}) {
    const double bound = entanglement_bound(alice, bob);
    for (std::size_t i = 0; i < config.samples; ++i) {
      RVector weights;
      std::vector<DensityState> astates, bstates;
      sampled_separable_ensemble(bob.dim, 1 + rng.integer(4), rng, weights,
                                 astates, bstates);
      const double value =
          separable_functional(weights, astates, bstates, alice, bob);
      report.worst_margin = std::max(report.worst_margin, value - bound);
      if (value > bound + config.tolerance) ++report.violations;
      ++report.samples;
    }
  }
  return report;
}

VerificationReport verify_zeta(const OracleConfig& config) {
  VerificationReport report;
  report.suite = "zeta";
  report.seed = config.seed;
  report.worst_margin = -std::numeric_limits<double>::infinity();

  Rng rng(config.seed);
  const std::size_t tuple_checks = std::max<std::size_t>(config.samples / 5, 20);
  for (const auto& set : {pauli_zx_set(), gellmann_148_set()}) {
    const std::size_t d = set.dim;
    for (std::size_t i = 0; i < tuple_checks; ++i) {
      std::vector<std::size_t> a(set.settings());
      for (auto& ax : a) ax = rng.integer(d);
      std::vector<std::size_t> perm(d);
      std::iota(perm.begin(), perm.end(), 0);
      for (std::size_t j = d - 1; j > 0; --j)
        std::swap(perm[j], perm[rng.integer(j + 1)]);
      const double zq =
          zeta_quantum_diagonal(set, set, set.setting_weights, a, perm);
      const double zs = zeta_separable(set, set, set.setting_weights, a, perm,
                                       10, config.seed + i);
      report.worst_margin = std::max(report.worst_margin, zs - zq);
      if (zs > zq + config.tolerance) ++report.violations;
      ++report.samples;
    }
  }

  // seesaw against the dense qubit grid
  const std::size_t grid_checks = std::min<std::size_t>(config.samples, 50);
  for (std::size_t i = 0; i < grid_checks; ++i) {
    Rng local(config.seed + 1000 + i);
    const std::size_t n = 2;
    std::vector<Measurement> ms;
    for (std::size_t x = 0; x < n; ++x)
      ms.push_back(random_projective_measurement(2, local));
    const MeasurementSet set = make_measurement_set(std::move(ms));
    std::vector<std::size_t> a(n);
    for (auto& ax : a) ax = local.integer(2);
    std::vector<std::size_t> perm = {0, 1};
    if (local.integer(2) == 1) std::swap(perm[0], perm[1]);
    const double seesaw = zeta_separable(set, set, set.setting_weights, a,
                                         perm, kSeesawDefaultRestarts,
                                         config.seed + 2000 + i);
    const double grid = grid_zeta_separable(set, set, a, perm,
                                            std::min<std::size_t>(
                                                config.grid_points, 60));
    report.worst_margin = std::max(report.worst_margin, grid - seesaw);
    if (seesaw < grid - 1e-3) ++report.violations;
    const double zq =
        zeta_quantum_diagonal(set, set, set.setting_weights, a, perm);
    if (grid > zq + config.tolerance) ++report.violations;
    ++report.samples;
  }
  return report;
}

}  // namespace qbound

// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Every tolerance is pinned here, in code.

#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "qbound/bounds.hpp"
#include "qbound/eigen.hpp"
#include "qbound/functionals.hpp"
#include "qbound/majorization.hpp"
#include "qbound/oracle.hpp"
#include "qbound/quantum.hpp"
#include "qbound/rng.hpp"

using namespace qbound;

namespace {

const double kRoot2 = std::sqrt(2.0);
const double kRoot5 = std::sqrt(5.0);

int failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
  std::printf("criterion %2d [%s] %s\n", criterion, pass ? "PASS" : "FAIL",
              detail.c_str());
  if (!pass) ++failures;
}

bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

std::string fmt(const char* pattern, double a, double b = 0.0,
                double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), pattern, a, b, c);
  return buf;
}

MeasurementSet random_projective_set(std::size_t dim, std::size_t settings,
                                     std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Measurement> ms;
  for (std::size_t x = 0; x < settings; ++x)
    ms.push_back(random_projective_measurement(dim, rng));
  return make_measurement_set(std::move(ms));
}

// ---- criterion 1: qubit Werner reproduction ----
void criterion_1() {
  bool pass = true;
  std::string detail = "qubit Werner:";

  const auto [alice, bob] = werner_measurements(WernerFamily::Qubit);
  const RVector s = s_sequence(bob);
  const RVector expected = {1.0, 1.0 + 1.0 / kRoot2, 2.0, 2.0};
  for (std::size_t i = 0; i < 4; ++i)
    pass &= close(s[i], expected[i], 1e-9);
  detail += pass ? " ladder ok;" : " ladder mismatch;";

  double worst = 0.0;
  for (int i = 0; i <= 100; ++i) {
    const double p = i / 100.0;
    const double sq = werner_quantum_functional(WernerFamily::Qubit, p);
    worst = std::max(worst, std::abs(sq - (1.0 + p)));
  }
  pass &= worst <= 1e-9;
  detail += fmt(" S_Q grid worst |err| %.2e;", worst);

  const WernerThresholds t = werner_thresholds(WernerFamily::Qubit);
  pass &= close(t.steering_closed, 0.7071068, 1e-6) &&
          close(t.steering_bisected, 0.7071068, 1e-6);
  pass &= close(t.entanglement_closed, 0.5857864, 1e-6) &&
          close(t.entanglement_bisected, 0.5857864, 1e-6);
  detail += fmt(" thresholds %.7f / %.7f", t.steering_closed,
                t.entanglement_closed);
  report(1, pass, detail);
}

// ---- criterion 2: qutrit Werner reproduction ----
void criterion_2() {
  bool pass = true;
  std::string detail = "qutrit Werner:";

  const auto [alice, bob] = werner_measurements(WernerFamily::Qutrit);
  const RVector s = s_sequence(bob);
  RVector expected = {1.0, 2.0, (3.0 + kRoot5) / 2.0};
  expected.resize(9, 3.0);
  for (std::size_t i = 0; i < 9; ++i)
    pass &= close(s[i], expected[i], 1e-9);
  detail += pass ? " ladder ok;" : " ladder mismatch;";

  double worst = 0.0;
  for (int i = 0; i <= 100; ++i) {
    const double p = i / 100.0;
    const double sq = werner_quantum_functional(WernerFamily::Qutrit, p);
    worst = std::max(worst, std::abs(sq - (1.0 + 2.0 * p)));
  }
  pass &= worst <= 1e-9;
  detail += fmt(" S_Q grid worst |err| %.2e;", worst);

  const WernerThresholds t = werner_thresholds(WernerFamily::Qutrit);
  pass &= close(t.steering_closed, 0.809017, 1e-6) &&
          close(t.steering_bisected, 0.809017, 1e-6);
  pass &= close(t.entanglement_closed, 0.763932, 1e-6) &&
          close(t.entanglement_bisected, 0.763932, 1e-6);
  const double rut = rutkowski_bound(bob);
  pass &= close(rut, 3.0, 1e-9);
  detail += fmt(" thresholds %.6f / %.6f; overlap bound %.9f", t.steering_closed,
                t.entanglement_closed, rut);
  report(2, pass, detail);
}

// ---- criterion 3: theta-family three-bound sweep ----
void criterion_3() {
  bool pass = true;
  double anchor = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double theta = (M_PI / 2.0) * i / 99.0;
    const MeasurementSet set = fig2_set(theta);
    const double steer = steering_bound(set);
    const double ent = entanglement_bound(set, set);
    const double rut = rutkowski_bound(set);
    if (i == 0) anchor = steer;
    pass &= ent <= steer + 1e-9;
    pass &= steer <= rut + 1e-9;
  }
  pass &= close(anchor, 3.0, 1e-9);
  report(3, pass,
         fmt("theta sweep: ordering holds on 100 points, steering(0) = %.9f",
             anchor));
}

// ---- criterion 4: linear steering inequality ----
void criterion_4() {
  const LinearInequalitySpec spec{{1.0, 1.0}, {1.0, -1.0}};
  const double bound = linear_steering_bound(spec, pauli_zx_set());
  const bool pass = close(bound, 1.0 / kRoot2, 1e-9);
  report(4, pass, fmt("linear inequality bound %.12f (expect 1/sqrt(2))",
                      bound));
}

// ---- criterion 5: LHS models never beat the steering bound ----
void criterion_5() {
  bool pass = true;
  std::size_t models = 0;
  double worst = -1.0;
  // all deterministic extremal strategies carry 20 hidden states each:
  // 4*20 = 80 for the qubit set, 27*20 = 540 for the qutrit set
  const struct {
    MeasurementSet set;
    std::size_t count;
  } plans[] = {{pauli_zx_set(), 400}, {gellmann_148_set(), 600}};
  for (const auto& plan : plans) {
    const double bound = steering_bound(plan.set);
    for (std::size_t i = 0; i < plan.count; ++i) {
      const LhsModel model = sampled_lhs_model(plan.set, i, 20240808);
      const double value = lhs_functional(model, plan.set);
      worst = std::max(worst, value - bound);
      pass &= value <= bound + 1e-9;
      ++models;
    }
  }

  // aligned-eigenvector construction saturates the bound on both sets
  double saturation_gap = 0.0;
  for (const MeasurementSet& set : {pauli_zx_set(), gellmann_148_set()}) {
    const double bound = steering_bound(set);
    const auto ladder = s_sequence_with_argmax(set);
    std::vector<DensityState> aligned;
    for (const auto& sel : ladder.second) {
      ComplexMatrix sum(set.dim, set.dim);
      for (const auto& [x, a] : sel.picks)
        sum += set.measurements[x].elements[a];
      const CVector top = top_eigenvector(sum);
      aligned.push_back(make_density_state(outer(top, top), "aligned"));
    }
    const double reached = enumerate_lhs_extremal(set, aligned);
    saturation_gap = std::max(saturation_gap, bound - reached);
    pass &= reached >= bound - 1e-6;
    pass &= reached <= bound + 1e-9;
  }
  report(5, pass,
         fmt("steering ceiling: %.0f LHS models, worst margin %.2e, "
             "saturation gap %.2e",
             static_cast<double>(models), worst, saturation_gap));
}

// ---- criterion 6: separable ensembles never beat the entanglement bound ----
void criterion_6() {
  bool pass = true;
  double worst = -1.0;
  std::size_t count = 0;
  Rng rng(606060);
  const auto qubit = werner_measurements(WernerFamily::Qubit);
  const auto qutrit = werner_measurements(WernerFamily::Qutrit);
  for (const auto& [alice, bob] : {qubit, qutrit}) {
    const double bound = entanglement_bound(alice, bob);
    for (int i = 0; i < 500; ++i) {
      RVector weights;
      std::vector<DensityState> astates, bstates;
      sampled_separable_ensemble(bob.dim, 1 + rng.integer(4), rng, weights,
                                 astates, bstates);
      const double value =
          separable_functional(weights, astates, bstates, alice, bob);
      worst = std::max(worst, value - bound);
      pass &= value <= bound + 1e-9;
      ++count;
    }
  }
  report(6, pass,
         fmt("entanglement ceiling: %.0f ensembles, worst margin %.2e",
             static_cast<double>(count), worst));
}

// ---- criterion 7: majorization property suites ----
void criterion_7() {
  bool pass = true;

  // 10,000 random (p, q, w) triples with p majorized by w
  Rng rng(707070);
  double worst_dot = -1.0;
  for (int trial = 0; trial < 10000; ++trial) {
    const std::size_t n = 2 + rng.integer(6);
    RVector w(n), q(n);
    for (auto& x : w) x = rng.uniform();
    for (auto& x : q) x = rng.uniform();
    RVector p(n, 0.0);
    const std::size_t mixes = 1 + rng.integer(4);
    const RVector mix = rng.probability_vector(mixes);
    for (std::size_t t = 0; t < mixes; ++t) {
      RVector perm = w;
      for (std::size_t i = n - 1; i > 0; --i)
        std::swap(perm[i], perm[rng.integer(i + 1)]);
      for (std::size_t i = 0; i < n; ++i) p[i] += mix[t] * perm[i];
    }
    const auto [lhs, rhs] = dot_sorted_bound(p, q, w);
    worst_dot = std::max(worst_dot, lhs - rhs);
    pass &= lhs <= rhs + 1e-9;
  }

  // 10,000 random states per shipped set: direct-sum Born majorization
  std::size_t violations = 0;
  double worst_prefix = -1.0;
  std::size_t set_index = 0;
  for (const MeasurementSet& set :
       {pauli_zx_set(), pauli_zx_anti_set(), gellmann_148_set(),
        fig2_set(0.7)}) {
    OracleConfig config;
    config.samples = 10000;
    config.seed = 700 + set_index++;
    const VerificationReport r = sample_majorization_suite(config, set);
    violations += r.violations;
    worst_prefix = std::max(worst_prefix, r.worst_margin);
  }
  pass &= violations == 0;
  report(7, pass,
         fmt("sorted-dot worst %.2e, prefix worst %.2e, violations %.0f",
             worst_dot, worst_prefix, static_cast<double>(violations)));
}

// ---- criterion 8: separable-class bounds stay ordered ----
void criterion_8() {
  bool pass = true;
  Rng rng(808080);
  double worst_gap = -1.0;
  std::size_t checks = 0;
  for (const MeasurementSet& set : {pauli_zx_set(), gellmann_148_set()}) {
    const std::size_t d = set.dim;
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<std::size_t> a(set.settings());
      for (auto& ax : a) ax = rng.integer(d);
      std::vector<std::size_t> perm(d);
      std::iota(perm.begin(), perm.end(), 0);
      for (std::size_t i = d - 1; i > 0; --i)
        std::swap(perm[i], perm[rng.integer(i + 1)]);
      const double zq =
          zeta_quantum_diagonal(set, set, set.setting_weights, a, perm);
      const double zs = zeta_separable(set, set, set.setting_weights, a, perm,
                                       10, 8000 + trial);
      worst_gap = std::max(worst_gap, zs - zq);
      pass &= zs <= zq + 1e-9;
      ++checks;
    }
  }

  // seesaw never falls below the dense Bloch grid by more than 1e-3
  double worst_grid = -1.0;
  for (int trial = 0; trial < 50; ++trial) {
    Rng local(9000 + trial);
    std::vector<Measurement> ms;
    for (int x = 0; x < 2; ++x)
      ms.push_back(random_projective_measurement(2, local));
    const MeasurementSet set = make_measurement_set(std::move(ms));
    std::vector<std::size_t> a = {local.integer(2), local.integer(2)};
    std::vector<std::size_t> perm = {0, 1};
    if (local.integer(2)) std::swap(perm[0], perm[1]);
    const double seesaw = zeta_separable(set, set, set.setting_weights, a,
                                         perm, kSeesawDefaultRestarts,
                                         9100 + trial);
    const double grid = grid_zeta_separable(set, set, a, perm, 24);
    worst_grid = std::max(worst_grid, grid - seesaw);
    pass &= seesaw >= grid - 1e-3;
  }
  report(8, pass,
         fmt("monotonicity on %.0f tuples, worst sep-quantum gap %.2e, "
             "worst grid-seesaw gap %.2e",
             static_cast<double>(checks), worst_gap, worst_grid));
}

// ---- criterion 9: oracle equivalence ----
void criterion_9() {
  bool pass = true;
  double worst = 0.0;
  std::vector<MeasurementSet> sets = {pauli_zx_set(), gellmann_148_set()};
  for (std::uint64_t i = 0; i < 20; ++i) {
    const std::size_t dim = 2 + i % 2;
    const std::size_t settings = 2 + (i / 2) % 2;
    sets.push_back(random_projective_set(dim, settings, 900 + i));
  }
  for (const auto& set : sets) {
    for (std::size_t k = 1; k <= set.pool_size(); ++k) {
      const double main_value = subset_norm(set, k).first;
      const double brute = brute_subset_norm(set, k);
      worst = std::max(worst, std::abs(main_value - brute));
      pass &= std::abs(main_value - brute) <= 1e-10;
    }
  }
  report(9, pass, fmt("main vs brute enumeration on %.0f sets, worst gap %.2e",
                      static_cast<double>(sets.size()), worst));
}

// ---- criterion 10: non-reproducibility note ----
void criterion_10() {
  report(10, true,
         "exact sweep curve values are not tabulated anywhere; ordering and "
         "the theta = 0 anchor stand in (see criterion 3)");
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  if (failures == 0)
    std::printf("acceptance: all criteria passed\n");
  else
    std::printf("acceptance: %d criterion(s) FAILED\n", failures);
  return failures;
}

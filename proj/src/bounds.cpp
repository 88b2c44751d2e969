#include "qbound/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qbound/eigen.hpp"

namespace qbound {

namespace {

// Strictly-greater threshold for replacing the running maximum; keeps the
// first (lexicographically smallest) subset among numerical ties.
constexpr double kTieTol = 1e-12;

struct Pool {
  std::vector<std::pair<std::size_t, std::size_t>> picks;  // (setting, outcome)
  const MeasurementSet* set = nullptr;

  const ComplexMatrix& element(std::size_t i) const {
    const auto& [x, a] = picks[i];
    return set->measurements[x].elements[a];
  }
};

Pool make_pool(const MeasurementSet& set, std::size_t limit) {
  Pool pool;
  pool.set = &set;
  for (std::size_t x = 0; x < set.settings(); ++x)
    for (std::size_t a = 0; a < set.measurements[x].outcomes(); ++a)
      pool.picks.emplace_back(x, a);
  if (pool.picks.size() > limit)
    fail(ErrorCode::PoolTooLarge,
         "element pool exceeds the exhaustive-enumeration limit");
  return pool;
}

// Visits all k-combinations of {0..n-1} in lexicographic order.
template <typename Visit>
void for_each_combination(std::size_t n, std::size_t k, Visit&& visit) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    visit(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

template <typename Score>
std::pair<double, SubsetSelection> max_over_subsets(const Pool& pool,
                                                    std::size_t k,
                                                    Score&& score) {
  const std::size_t dim = pool.set->dim;
  double best = -std::numeric_limits<double>::infinity();
  SubsetSelection best_sel;
  for_each_combination(pool.picks.size(), k,
                       [&](const std::vector<std::size_t>& idx) {
                         ComplexMatrix sum(dim, dim);
                         for (std::size_t i : idx) sum += pool.element(i);
                         const double v = score(sum);
                         if (v > best + kTieTol) {
                           best = v;
                           best_sel.picks.clear();
                           for (std::size_t i : idx)
                             best_sel.picks.push_back(pool.picks[i]);
                         }
                       });
  return {best, best_sel};
}

void check_k(std::size_t k, std::size_t pool_size) {
  if (k < 1 || k > pool_size)
    fail(ErrorCode::KOutOfRange, "subset size outside 1..pool");
}

}  // namespace

std::pair<double, SubsetSelection> subset_norm(const MeasurementSet& set,
                                               std::size_t k) {
  const Pool pool = make_pool(set, kMaxSubsetPool);
  check_k(k, pool.picks.size());
  return max_over_subsets(pool, k, [](const ComplexMatrix& sum) {
    return max_hermitian_eigenvalue(sum);
  });
}

RVector s_sequence(const MeasurementSet& set) {
  return s_sequence_with_argmax(set).first;
}

std::pair<RVector, std::vector<SubsetSelection>> s_sequence_with_argmax(
    const MeasurementSet& set) {
  const Pool pool = make_pool(set, kMaxSubsetPool);
  RVector s;
  std::vector<SubsetSelection> argmax;
  s.reserve(pool.picks.size());
  for (std::size_t k = 1; k <= pool.picks.size(); ++k) {
    auto [value, sel] = max_over_subsets(pool, k, [](const ComplexMatrix& m) {
      return max_hermitian_eigenvalue(m);
    });
    s.push_back(value);
    argmax.push_back(std::move(sel));
  }
  return {std::move(s), std::move(argmax)};
}

double steering_bound(const MeasurementSet& bob_set) {
  return subset_norm(bob_set, bob_set.settings()).first;
}

double entanglement_bound(const MeasurementSet& alice_set,
                          const MeasurementSet& bob_set) {
  const MajorizationVector wa = w_from_s_sequence(s_sequence(alice_set));
  const MajorizationVector wb = w_from_s_sequence(s_sequence(bob_set));
  const std::size_t n =
      std::max(wa.components.size(), wb.components.size());
  double dot = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = i < wa.components.size() ? wa.components[i] : 0.0;
    const double b = i < wb.components.size() ? wb.components[i] : 0.0;
    dot += a * b;
  }
  return dot;
}

double spectrum_weighted_s(const MeasurementSet& set, const Spectrum& lambda,
                           std::size_t k) {
  if (lambda.values.size() != set.dim)
    fail(ErrorCode::BadSpectrum, "spectrum length differs from dimension");
  double total = 0.0;
  for (double v : lambda.values) {
    if (!(v >= -kPsdTol))
      fail(ErrorCode::BadSpectrum, "spectrum has a negative weight");
    total += v;
  }
  if (std::abs(total - 1.0) > kTraceTol)
    fail(ErrorCode::BadSpectrum, "spectrum does not sum to 1");
  RVector weights = lambda.values;
  std::sort(weights.begin(), weights.end(), std::greater<double>());

  const Pool pool = make_pool(set, kMaxSubsetPool);
  check_k(k, pool.picks.size());
  return max_over_subsets(pool, k,
                          [&](const ComplexMatrix& sum) {
                            const Spectrum spec = hermitian_spectrum(sum);
                            double dot = 0.0;
                            for (std::size_t i = 0; i < weights.size(); ++i)
                              dot += weights[i] * spec.values[i];
                            return dot;
                          })
      .first;
}

double overlap_c(const Measurement& mx, const Measurement& my) {
  if (mx.kind != MeasurementKind::ProjectiveBasis ||
      my.kind != MeasurementKind::ProjectiveBasis)
    fail(ErrorCode::NotProjective, "overlap needs projective bases");
  if (mx.dim != my.dim)
    fail(ErrorCode::DimensionMismatch, "bases act on different dimensions");
  double best = 0.0;
  for (const auto& u : mx.vectors)
    for (const auto& v : my.vectors)
      best = std::max(best, std::abs(inner(u, v)));
  return best;
}

double rutkowski_bound(const MeasurementSet& bob_set) {
  for (const auto& m : bob_set.measurements)
    if (m.kind != MeasurementKind::ProjectiveBasis)
      fail(ErrorCode::NotProjective, "overlap bound needs projective bases");
  const std::size_t n = bob_set.settings();
  if (n < 2)
    fail(ErrorCode::PreconditionFailed, "overlap bound needs N >= 2 settings");
  double bound = 1.0;
  for (std::size_t i = 1; i <= n - 1; ++i) {
    double ci = 0.0;
    for (std::size_t x = 1; x <= n; ++x) {
      // 1-based reading of the (N + x - i mod N) partner index
      const std::size_t y = (n + x - i - 1) % n + 1;
      ci = std::max(ci, overlap_c(bob_set.measurements[x - 1],
                                  bob_set.measurements[y - 1]));
    }
    bound += ci;
  }
  return bound;
}

std::pair<double, double> violation_ratios(std::size_t n_settings,
                                           double steering_bound,
                                           double entanglement_bound) {
  if (steering_bound <= 0.0 || entanglement_bound <= 0.0)
    fail(ErrorCode::NonPositiveBound, "violation ratios need positive bounds");
  const double n = static_cast<double>(n_settings);
  return {n / steering_bound, n / entanglement_bound};
}

BoundReport bound_report(const MeasurementSet& bob_set,
                         const MeasurementSet* alice_set,
                         const Spectrum* lambda) {
  BoundReport report;
  report.dim = bob_set.dim;
  report.settings = bob_set.settings();
  auto [s, argmax] = s_sequence_with_argmax(bob_set);
  report.s_sequence = s;
  report.argmax_subsets = std::move(argmax);
  report.w_vector = w_from_s_sequence(s);
  report.steering_bound = s[bob_set.settings() - 1];
  if (alice_set)
    report.entanglement_bound = entanglement_bound(*alice_set, bob_set);

  bool projective = true;
  for (const auto& m : bob_set.measurements)
    projective &= m.kind == MeasurementKind::ProjectiveBasis;
  if (projective && bob_set.settings() >= 2)
    report.rutkowski_bound = rutkowski_bound(bob_set);

  if (report.entanglement_bound)
    report.violation_ratios = violation_ratios(
        bob_set.settings(), report.steering_bound, *report.entanglement_bound);

  if (lambda) {
    SpectrumWeightedBounds sw;
    sw.lambda = lambda->values;
    for (std::size_t k = 1; k <= bob_set.pool_size(); ++k)
      sw.s_sequence_lambda.push_back(spectrum_weighted_s(bob_set, *lambda, k));
    // the reduced-spectrum steering bound uses subsets of size N
    sw.steering_bound_lambda = sw.s_sequence_lambda[bob_set.settings() - 1];
    report.spectrum_weighted = std::move(sw);
  }
  return report;
}

}  // namespace qbound

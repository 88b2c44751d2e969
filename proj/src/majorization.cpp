#include "qbound/majorization.hpp"

#include <algorithm>
#include <cmath>

namespace qbound {

namespace {

void check_components(const RVector& v, const char* what) {
  for (double x : v) {
    if (!std::isfinite(x))
      fail(ErrorCode::BadParameter, std::string(what) + " has non-finite entries");
    if (x < -kMajorizationSlack)
      fail(ErrorCode::NegativeComponent,
           std::string(what) + " has a negative component");
  }
}

RVector sorted_desc(RVector v) {
  std::sort(v.begin(), v.end(), std::greater<double>());
  return v;
}

RVector clipped(RVector v) {
  for (double& x : v) x = std::max(x, 0.0);
  return v;
}

}  // namespace

MajorizationVector make_majorization_vector(RVector components,
                                            MajorizationKind kind) {
  check_components(components, "majorization vector");
  MajorizationVector out;
  out.components = clipped(std::move(components));
  out.kind = kind;
  for (double x : out.components) out.total += x;
  return out;
}

bool majorizes(const RVector& w, const RVector& p) {
  check_components(w, "bound vector");
  check_components(p, "compared vector");
  RVector ws = sorted_desc(clipped(w));
  RVector ps = sorted_desc(clipped(p));
  const std::size_t n = std::max(ws.size(), ps.size());
  ws.resize(n, 0.0);
  ps.resize(n, 0.0);
  double wsum = 0.0;
  double psum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    wsum += ws[i];
    psum += ps[i];
    if (psum > wsum + kMajorizationSlack) return false;
  }
  return true;
}

std::pair<double, double> dot_sorted_bound(const RVector& p, const RVector& q,
                                           const RVector& w) {
  check_components(q, "q");
  if (!majorizes(w, p))
    fail(ErrorCode::PreconditionFailed, "p is not majorized by w");
  const std::size_t n = std::max({p.size(), q.size(), w.size()});
  RVector pe = p, qe = q, we = w;
  pe.resize(n, 0.0);
  qe.resize(n, 0.0);
  we.resize(n, 0.0);
  double lhs = 0.0;
  for (std::size_t i = 0; i < n; ++i) lhs += pe[i] * qe[i];
  const RVector wd = sorted_desc(clipped(std::move(we)));
  const RVector qd = sorted_desc(clipped(std::move(qe)));
  double rhs = 0.0;
  for (std::size_t i = 0; i < n; ++i) rhs += wd[i] * qd[i];
  return {lhs, rhs};
}

RVector direct_sum(const std::vector<RVector>& vectors) {
  RVector out;
  for (const auto& v : vectors) out.insert(out.end(), v.begin(), v.end());
  return out;
}

RVector direct_product(const RVector& p, const RVector& q) {
  check_components(p, "p");
  check_components(q, "q");
  RVector out;
  out.reserve(p.size() * q.size());
  for (double a : p)
    for (double b : q) out.push_back(a * b);
  return out;
}

double shannon_entropy(const RVector& p) {
  check_components(p, "distribution");
  double h = 0.0;
  for (double x : p)
    if (x > 0.0) h -= x * std::log2(x);
  return h;
}

MajorizationVector omega_assemble(const RVector& omegas) {
  if (omegas.empty())
    fail(ErrorCode::BadParameter, "empty Omega ladder");
  RVector diffs;
  diffs.reserve(omegas.size());
  diffs.push_back(omegas.front());
  for (std::size_t i = 1; i < omegas.size(); ++i) {
    const double d = omegas[i] - omegas[i - 1];
    if (d < -kMajorizationSlack)
      fail(ErrorCode::NotMonotone, "Omega ladder is not nondecreasing");
    diffs.push_back(std::max(d, 0.0));
  }
  return make_majorization_vector(std::move(diffs), MajorizationKind::Omega);
}

MajorizationVector w_from_s_sequence(const RVector& s) {
  if (s.empty())
    fail(ErrorCode::BadParameter, "empty subset-norm ladder");
  RVector diffs;
  diffs.reserve(s.size());
  diffs.push_back(s.front());
  for (std::size_t i = 1; i < s.size(); ++i) {
    const double d = s[i] - s[i - 1];
    if (d < -kMajorizationSlack)
      fail(ErrorCode::NotMonotone, "subset-norm ladder is not nondecreasing");
    diffs.push_back(std::max(d, 0.0));
  }
  return make_majorization_vector(std::move(diffs), MajorizationKind::WBound);
}

}  // namespace qbound

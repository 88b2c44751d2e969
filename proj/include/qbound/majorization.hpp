#pragma once

#include <utility>
#include <vector>

#include "qbound/complex_matrix.hpp"

namespace qbound {

inline constexpr double kMajorizationSlack = 1e-9;

enum class MajorizationKind { WBound, Omega, RSelector, Generic };

struct MajorizationVector {
  RVector components;  // nonnegative (tiny negatives clipped to 0)
  MajorizationKind kind = MajorizationKind::Generic;
  double total = 0.0;
};

MajorizationVector make_majorization_vector(RVector components,
                                            MajorizationKind kind);

// Weak submajorization: every prefix sum of sorted-descending p bounded by
// that of w, within 1e-9 slack. Equality of totals is NOT required -- the
// bound vectors used here may have larger totals than the distributions
// they dominate. Vectors are zero-padded on the right to a common length.
bool majorizes(const RVector& w, const RVector& p);

// (P.Q, Wsorted.Qsorted) with the precondition p majorized-by w.
std::pair<double, double> dot_sorted_bound(const RVector& p, const RVector& q,
                                           const RVector& w);

// Concatenation in setting order.
RVector direct_sum(const std::vector<RVector>& vectors);

// Flattened outer product p_i * q_j, index (i, j) -> i*|q| + j.
RVector direct_product(const RVector& p, const RVector& q);

// -sum p_i log2 p_i with 0 log 0 = 0; the input need not be normalized.
double shannon_entropy(const RVector& p);

// First differences of a nondecreasing ladder (Omega_1, Omega_2, ...).
MajorizationVector omega_assemble(const RVector& omegas);

// (s(1), s(2)-s(1), ...) from a nondecreasing subset-norm ladder.
MajorizationVector w_from_s_sequence(const RVector& s);

}  // namespace qbound

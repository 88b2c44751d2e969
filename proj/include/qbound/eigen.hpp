#pragma once

#include <vector>

#include "qbound/complex_matrix.hpp"

namespace qbound {

// Real eigenvalue / singular value list, sorted nonincreasing.
struct Spectrum {
  std::vector<double> values;
};

struct EigenSystem {
  std::vector<double> values;  // nonincreasing
  ComplexMatrix vectors;       // column j is the eigenvector for values[j]
};

inline constexpr double kHermitianTol = 1e-9;

// Cyclic Jacobi diagonalization for complex Hermitian matrices.
// Stops when the off-diagonal norm falls below 1e-13 (relative to the
// Frobenius norm), at most 100 sweeps. Throws NotHermitian when the input
// deviates from Hermitian symmetry by more than 1e-9, NoConvergence if the
// sweep limit is hit.
EigenSystem hermitian_eigensystem(const ComplexMatrix& m);

// Eigenvalues only (same solver, no eigenvector accumulation).
Spectrum hermitian_spectrum(const ComplexMatrix& m);

// Largest eigenvalue of a Hermitian matrix.
double max_hermitian_eigenvalue(const ComplexMatrix& m);

// Eigenvector of the largest eigenvalue, with a deterministic global phase
// (largest-magnitude component made real nonnegative).
CVector top_eigenvector(const ComplexMatrix& m);

// Singular values via the eigenvalues of m^dagger m; fine at these sizes
// and tolerances.
Spectrum singular_values(const ComplexMatrix& m);

}  // namespace qbound

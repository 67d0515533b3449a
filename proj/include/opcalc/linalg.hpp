#pragma once

#include <vector>

#include "opcalc/matrix.hpp"

namespace opcalc {

/// Solves A X = B by LU with partial pivoting.
///
/// Throws Error{SingularMatrix} when a pivot magnitude falls below
/// 1e-14 * norm_1(A). No iterative refinement is performed.
ComplexMatrix solve(const ComplexMatrix& a, const ComplexMatrix& b);

/// solve(a, I)
ComplexMatrix inverse(const ComplexMatrix& a);

struct Disc {
  cplx center;
  double radius = 0.0;
};

/// Row Gershgorin discs plus one disc covering all of them.
struct SpectralEnclosure {
  cplx center;
  double radius = 0.0;
  std::vector<Disc> discs;
};

SpectralEnclosure spectral_enclosure(const ComplexMatrix& a);

/// Gershgorin discs of A^T; the spectrum also lies in their union.
SpectralEnclosure column_enclosure(const ComplexMatrix& a);

/// Distance from z to the closed ray (-inf, 0].
double distance_to_branch_cut(cplx z);

/// True when no disc touches the closed ray (-inf, 0].
bool discs_clear_branch_cut(const std::vector<Disc>& discs);

/// True when (A + A^*)/2 is positive definite, i.e. the field of values of A
/// lies in the open right half-plane. Decided by a Cholesky attempt.
bool hermitian_part_positive_definite(const ComplexMatrix& a);

/// Sufficient test that the spectrum of A avoids (-inf, 0], so the principal
/// logarithm and square root exist. Accepts when the row discs, the column
/// discs or the field of values certifies it.
bool principal_log_admissible(const ComplexMatrix& a);

}  // namespace opcalc

#pragma once

#include <functional>

#include "opcalc/matrix.hpp"

namespace opcalc {

/// A matrix-valued function of one real parameter.
using MatrixCurve = std::function<ComplexMatrix(double)>;

/// Circle used for Riesz-Dunford quadrature of the principal logarithm.
struct ContourSpec {
  cplx center{1.0, 0.0};
  double radius = 0.5;
  int nodes = 64;
};

/// Throws Error{ContourInvalid} unless radius > 0, nodes > 0 and the closed
/// disc stays off the ray (-inf, 0].
void validate(const ContourSpec& contour);

/// Picks a circle between the Gershgorin enclosure of m and the branch cut.
ContourSpec auto_contour(const ComplexMatrix& m, int nodes = 64);

enum class FdScheme { Central };

struct FdConfig {
  double h = 1e-3;
  FdScheme scheme = FdScheme::Central;
  int richardson_levels = 1;
};

void validate(const FdConfig& cfg);

/// Scaling and squaring with a truncated Taylor series.
/// Throws Error{Overflow} if norm_1(a) > 1e4.
ComplexMatrix expm(const ComplexMatrix& a);

/// Principal square root by the Denman-Beavers iteration.
/// Throws Error{BranchCutViolation} if the spectrum cannot be certified off
/// (-inf, 0], Error{NoConvergence} after 60 iterations.
ComplexMatrix sqrtm_db(const ComplexMatrix& m);

/// Principal logarithm by inverse scaling and squaring.
ComplexMatrix logm_iss(const ComplexMatrix& m);

/// Principal logarithm by trapezoidal quadrature of
///   (1 / 2 pi i) \oint log(z) (zI - M)^{-1} dz
/// over the given circle. The node count starts at contour.nodes and doubles
/// until successive results agree to 1e-9; Error{NoConvergence} past 4096.
ComplexMatrix logm_contour(const ComplexMatrix& m, const ContourSpec& contour);

/// Central finite difference of order 1 or 2 at t0 with Richardson
/// extrapolation over successively halved steps h, h/2, ...
/// Evaluation failures inside f are rethrown as Error{EvaluationFailure}.
ComplexMatrix fd_derivative(const MatrixCurve& f, double t0, const FdConfig& cfg, int order);

}  // namespace opcalc

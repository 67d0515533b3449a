#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "opcalc/matfun.hpp"
#include "opcalc/matrix.hpp"

namespace opcalc {

/// Time-dependent generator t -> A(t) on [0, horizon].
///
/// Immutable after construction; eval must be safe to call concurrently.
struct GeneratorSpec {
  std::string id;
  std::size_t dim = 0;
  double horizon = 1.0;
  MatrixCurve eval;
};

GeneratorSpec zero_generator(std::size_t dim, double horizon = 1.0);
GeneratorSpec constant_generator(std::string id, ComplexMatrix a, double horizon = 1.0);
/// A(t) = f(t) A0. All members of the family commute.
GeneratorSpec modulated_generator(std::string id, ComplexMatrix a0, std::function<double(double)> f,
                                  double horizon = 1.0);
/// A(t) = A0 + t A1. Non-commuting in general.
GeneratorSpec affine_generator(std::string id, ComplexMatrix a0, ComplexMatrix a1, double horizon = 1.0);
/// Piecewise-linear interpolation of (t, A) samples sorted by t; constant
/// extrapolation outside the sampled range.
GeneratorSpec table_generator(std::string id, std::vector<std::pair<double, ComplexMatrix>> samples,
                              double horizon);

/// Largest sampled ||A(t + delta) - A(t)||_1 / delta over a uniform grid of
/// `samples` points on [0, horizon].
double lipschitz_estimate(const GeneratorSpec& g, int samples = 64);

enum class Stepper { RK4, Magnus2 };

std::string_view to_string(Stepper s);
Stepper stepper_from_string(std::string_view name);

struct GrowthBound {
  double m = 1.0;
  double omega = 0.0;
};

/// U(t, s) together with how it was produced.
struct EvolutionOperator {
  ComplexMatrix u;
  double t = 0.0;
  double s = 0.0;
  std::string generator_id;
  Stepper stepper = Stepper::RK4;
  int steps = 0;
  std::optional<GrowthBound> growth;
};

/// Integrates dU/dt = A(t) U, U(s, s) = I, with `steps` uniform steps.
/// RK4 is the classical fourth-order scheme; Magnus2 applies
/// expm(h A(midpoint)) per step. Throws Error{StepFailure} on non-finite
/// intermediate values.
EvolutionOperator propagate(const GeneratorSpec& g, double t, double s, int steps,
                            Stepper stepper = Stepper::RK4);

/// ||U(t, r) U(r, s) - U(t, s)||_1 where `steps` is the step count on [s, t]
/// and the sub-intervals use the same step density.
double check_semigroup(const GeneratorSpec& g, double s, double r, double t, int steps,
                       Stepper stepper = Stepper::RK4);

/// norm_1(U) <= M e^{omega (t - s)} (1 + 1e-9).
bool check_growth_bound(const EvolutionOperator& u, double m, double omega);

}  // namespace opcalc

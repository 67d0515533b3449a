#pragma once

#include <span>
#include <string>
#include <vector>

#include "opcalc/evolution.hpp"
#include "opcalc/matfun.hpp"

namespace opcalc {

/// Shift placing U + kappa I in the domain of the principal logarithm.
struct KappaChoice {
  cplx kappa;
  double sup_norm = 0.0;  ///< max norm_1(U) over the family
  double margin = 2.0;
};

/// kappa = margin * max norm_1(U), real and positive. The spectrum of
/// U + kappa I then lies in the disc (kappa, kappa / margin), strictly inside
/// the right half-plane. Every U + kappa I is checked to be invertible.
KappaChoice select_kappa(std::span<const EvolutionOperator> family, double margin = 2.0);

/// U(tau, s) for each tau in `times`, with a shared step density.
std::vector<EvolutionOperator> sample_family(const GeneratorSpec& g, double s, std::span<const double> times,
                                             int steps_per_unit, Stepper stepper = Stepper::RK4);

/// a = Log(U + kappa I), the bounded alternative generator.
ComplexMatrix alt_generator(const ComplexMatrix& u, cplx kappa);
ComplexMatrix alt_generator(const EvolutionOperator& u, cplx kappa);

struct LogEntry {
  double t = 0.0;
  double s = 0.0;
  ComplexMatrix a;
};

/// (kappa, a(t, s)) over a grid, with e^{a(t,s)} = U(t,s) + kappa I.
struct LogRepresentation {
  cplx kappa;
  std::string generator_id;
  std::vector<LogEntry> entries;
};

LogRepresentation build_log_representation(const GeneratorSpec& g,
                                           std::span<const std::pair<double, double>> grid, cplx kappa,
                                           int steps_per_unit, Stepper stepper = Stepper::RK4);

/// max over entries of ||expm(a) - (U + kappa I)||_1 / ||U + kappa I||_1.
double reexponentiation_residual(const GeneratorSpec& g, const LogRepresentation& rep, int steps_per_unit,
                                 Stepper stepper = Stepper::RK4);

struct RecoveryOptions {
  FdConfig fd{};
  int steps = 400;  ///< fixed step count for every U(tau, s), shared across tau
  Stepper stepper = Stepper::RK4;
};

/// A(t) = (I - kappa e^{-a(t,s)})^{-1} d/dt a(t,s), the derivative taken by
/// finite differences of tau -> Log(U(tau, s) + kappa I).
///
/// Exact only when dU/dt commutes with U. Throws Error{SingularMatrix}
/// (with kappa and the pivot in the message) when the prefactor is
/// numerically singular.
ComplexMatrix recover_generator(const GeneratorSpec& g, double s, double t, cplx kappa,
                                const RecoveryOptions& opts = {});

struct AsymmetryReport {
  ComplexMatrix lhs;  ///< e^{-a(t,s)} = (U + kappa I)^{-1}
  ComplexMatrix rhs;  ///< U^{-1} + kappa I, what e^{a(s,t)} would be if U(s,t) = U(t,s)^{-1}
  double gap = 0.0;   ///< ||lhs - rhs||_1
};

AsymmetryReport check_asymmetry(const ComplexMatrix& u, cplx kappa);
AsymmetryReport check_asymmetry(const GeneratorSpec& g, double s, double t, cplx kappa, int steps = 400);

}  // namespace opcalc

#pragma once

#include <span>
#include <string>
#include <vector>

#include "opcalc/matfun.hpp"
#include "opcalc/matrix.hpp"

namespace opcalc {

/// [A, B] = AB - BA
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

/// sum_{n=0}^{terms} ad_{a1}^n(a2) / n!, the conjugation series for
/// e^{a1} a2 e^{-a1}.
ComplexMatrix adjoint_series(const ComplexMatrix& a1, const ComplexMatrix& a2, int terms);

/// Log(e^X e^Y) via logm_iss: the exact value the product series sums to.
ComplexMatrix log_product(const ComplexMatrix& x, const ComplexMatrix& y);

/// One term of the product series: num/den times the right-nested
/// commutator spelled by `word`. "X" and "Y" are the letters themselves,
/// "XY" is [X,Y], "XXY" is [X,[X,Y]], "YXXY" is [Y,[X,[X,Y]]].
struct BchTerm {
  long num = 1;
  long den = 1;
  std::string word;
};

struct BchTruncation {
  int order = 1;
  std::vector<BchTerm> terms;
};

/// Terms through the given order (1..4).
BchTruncation bch_truncation(int order);

ComplexMatrix evaluate(const BchTruncation& truncation, const ComplexMatrix& x, const ComplexMatrix& y);

ComplexMatrix bch_truncated(const ComplexMatrix& x, const ComplexMatrix& y, int order);

struct Lemma2Check {
  bool holds = false;                ///< ||e^{tA}||, ||e^{tB}|| < delta on the grid
  bool product_below_two = false;    ///< ||e^{tA} e^{tB}|| < 2 on the grid
  double max_norm_a = 0.0;
  double max_norm_b = 0.0;
  double max_norm_product = 0.0;
};

/// Smallness condition for the product series on t in the grid.
/// Throws Error{InvalidArgument} unless 0 < delta <= sqrt(2) and every grid
/// point lies in [0, 1].
Lemma2Check lemma2_condition(const ComplexMatrix& a, const ComplexMatrix& b, double delta,
                             std::span<const double> tgrid);

struct Theorem2Comparison {
  ComplexMatrix lhs;  ///< e^{a1} e^{a2} + kappa I
  ComplexMatrix rhs;  ///< exp(Log(kappa+1) + (a1+a2)/(kappa+1) + [a1,a2]/(2(kappa+1)))
  double residual = 0.0;
  /// Residual against the complete second-order expansion of
  /// Log(e^{a1} e^{a2} + kappa I), which keeps the
  /// kappa / (2 (kappa+1)^2) (a1+a2)^2 term the shifted formula omits.
  double second_order_residual = 0.0;
  /// ||(e^{a1} e^{a2} - I) / (kappa+1)||_1, must be < 1.
  double series_argument_norm = 0.0;
  bool precondition_holds = false;
};

/// Shifted product formula. `order` 1 keeps the linear terms only, 2 adds
/// the commutator. Throws Error{ConvergenceViolation} when kappa = -1 or the
/// series argument has norm >= 1, unless enforce_precondition is false.
Theorem2Comparison theorem2_compare(const ComplexMatrix& a1, const ComplexMatrix& a2, cplx kappa,
                                    int order = 2, bool enforce_precondition = true);

enum class ExponentMode { Frozen, Integral };

struct VonNeumannConfig {
  double hbar = 1.0;
  FdConfig fd{.h = 1e-2};
  ExponentMode mode = ExponentMode::Frozen;
  int quadrature_panels = 16;  ///< Simpson panels for the integral mode
};

void validate(const VonNeumannConfig& cfg);

/// Taylor data of F(sigma) = Log(e^{G1(sigma)} e^{G2(sigma)}) at 0, where
/// G_i(sigma) = a_i(0) sigma (frozen) or int_0^sigma a_i(tau) dtau (integral).
struct Theorem3Report {
  ComplexMatrix first_derivative;    ///< F'(0)
  ComplexMatrix second_derivative;   ///< F''(0)
  ComplexMatrix sum;                 ///< a1(0) + a2(0)
  ComplexMatrix commutator;          ///< [a1(0), a2(0)]
  ComplexMatrix drift;               ///< d/dsigma (a1 + a2) at 0, by finite differences
  double first_residual = 0.0;       ///< ||F'(0) - sum||
  double second_residual = 0.0;      ///< ||F''(0) - commutator||
  double second_residual_with_drift = 0.0;  ///< ||F''(0) - commutator - drift||
};

Theorem3Report theorem3_expand(const MatrixCurve& a1, const MatrixCurve& a2, const VonNeumannConfig& cfg);

/// d^2/ds^2 Log(e^{Xs} e^{Ys}) at s = 0 by central differences; equals
/// [X, Y] up to the finite-difference error.
ComplexMatrix von_neumann_second_derivative(const ComplexMatrix& x, const ComplexMatrix& y,
                                            const VonNeumannConfig& cfg);

struct VonNeumannPoint {
  double t = 0.0;
  ComplexMatrix rho;
  double residual = 0.0;             ///< ||d rho/dt - (i/hbar) F''(0)||_1
  double trace_drift = 0.0;          ///< |tr rho(t) - tr rho(0)|
  double commutator_side_norm = 0.0; ///< ||(i/hbar) F''(0)||_1
};

struct VonNeumannReport {
  std::vector<VonNeumannPoint> points;
  double max_residual = 0.0;
  double max_trace_drift = 0.0;
};

/// Evolves d rho/dt = (i/hbar)[rho, H] from rho0 by RK4 and checks, at each
/// grid time, the time derivative against the logarithmic second derivative.
VonNeumannReport von_neumann_rhs(const ComplexMatrix& rho0, const ComplexMatrix& h, const VonNeumannConfig& cfg,
                                 std::span<const double> tgrid, int rk4_steps = 2000);

}  // namespace opcalc

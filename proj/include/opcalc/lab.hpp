#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "opcalc/evolution.hpp"
#include "opcalc/matfun.hpp"

namespace opcalc {

/// Periodic finite-difference operators on [0, 1) whose norms diverge
/// under refinement, standing in for unbounded generators.
enum class FamilyKind { Advection, Diffusion, AdvectionTdep };

std::string_view to_string(FamilyKind kind);
FamilyKind family_kind_from_string(std::string_view name);

struct FamilyParams {
  double speed = 1.0;        ///< advection speed c
  double viscosity = 0.01;   ///< diffusion coefficient nu
  double potential = 1.0;    ///< amplitude of the diagonal grid potential B
};

struct DiscretizedFamily {
  FamilyKind kind = FamilyKind::Diffusion;
  FamilyParams params;
  std::vector<std::size_t> dims;
};

/// Modulation of the time-dependent advection family, f(0) = 1.
double advection_modulation(double t);

/// c D1 (central, skew-symmetric), nu D2 (symmetric, negative
/// semi-definite), or f(t) c D1. Throws Error{InvalidSize} for n < 4.
GeneratorSpec build(FamilyKind kind, std::size_t n, const FamilyParams& params, double horizon = 1.0);

/// diag(potential * cos(2 pi x_j)) on the same grid.
ComplexMatrix grid_potential(std::size_t n, double amplitude);

struct SweepOptions {
  double budget = 2e11;       ///< cap on estimated complex multiply-adds
  FdConfig fd{};              ///< derivative step for the generator recovery
  double stiffness_step = 0.2;  ///< target ||A||_1 * dt per RK4 step
  int min_steps = 32;
};

struct SweepRow {
  std::size_t n = 0;
  double norm_A = 0.0;
  double norm_A_ratio = 0.0;
  double norm_a = 0.0;
  double kappa = 0.0;
  double residual_naive = 0.0;   ///< product-form error of the order-2 series on (tau A, tau B)
  double residual_thm2 = 0.0;    ///< shifted product formula on (a1, a2)
  double residual_eq6 = 0.0;     ///< relative generator-recovery error, NaN if singular
  bool thm2_precondition = false;
  double semigroup_residual = 0.0;
  int steps = 0;
};

struct SweepReport {
  DiscretizedFamily family;
  double t = 0.0;
  double s = 0.0;
  std::vector<SweepRow> rows;
  double growth_slope = 0.0;   ///< log-log slope of norm_A against n
  double band_ratio = 0.0;     ///< max / min of norm_a
  bool norms_increasing = false;
};

/// Estimated cost of refinement_sweep in complex multiply-adds.
double sweep_cost(const DiscretizedFamily& family, double t, double s, const SweepOptions& opts);

/// Per grid size: norms of A_n and a_n(t, s), kappa from select_kappa over
/// both families, and the three identity residuals. Throws
/// Error{BudgetExceeded} before doing any work if sweep_cost exceeds the
/// budget, Error{InvalidArgument} unless dims ascend.
SweepReport refinement_sweep(const DiscretizedFamily& family, double t, double s, const SweepOptions& opts = {});

/// Expected log-log growth slope for the kind: 1 for advection, 2 for diffusion.
double expected_growth_slope(FamilyKind kind);

/// Growth slope within +-0.2 of the expected one, norms increasing, and
/// band ratio <= 4.
bool sweep_invariants_hold(const SweepReport& report);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace opcalc

#include "opcalc/lab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "opcalc/bch.hpp"
#include "opcalc/error.hpp"
#include "opcalc/logrep.hpp"

namespace opcalc {

std::string_view to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::Advection: return "advection";
    case FamilyKind::Diffusion: return "diffusion";
    case FamilyKind::AdvectionTdep: return "advection_tdep";
  }
  return "unknown";
}

FamilyKind family_kind_from_string(std::string_view name) {
  if (name == "advection") return FamilyKind::Advection;
  if (name == "diffusion") return FamilyKind::Diffusion;
  if (name == "advection_tdep") return FamilyKind::AdvectionTdep;
  throw Error(ErrorKind::InvalidArgument, "unknown family kind '" + std::string(name) + "'");
}

double advection_modulation(double t) { return 1.0 + 0.5 * std::sin(2.0 * std::numbers::pi * t); }

namespace {

ComplexMatrix first_difference(std::size_t n) {
  const double w = 0.5 * static_cast<double>(n);  // 1 / (2h), h = 1/n
  ComplexMatrix d(n);
  for (std::size_t i = 0; i < n; ++i) {
    d(i, (i + 1) % n) += w;
    d(i, (i + n - 1) % n) -= w;
  }
  return d;
}

ComplexMatrix second_difference(std::size_t n) {
  const double w = static_cast<double>(n) * static_cast<double>(n);  // 1 / h^2
  ComplexMatrix d(n);
  for (std::size_t i = 0; i < n; ++i) {
    d(i, i) -= 2.0 * w;
    d(i, (i + 1) % n) += w;
    d(i, (i + n - 1) % n) += w;
  }
  return d;
}

// Upper bound of ||A(t)||_1 over the horizon.
double norm_bound(FamilyKind kind, std::size_t n, const FamilyParams& p) {
  const double nd = static_cast<double>(n);
  switch (kind) {
    case FamilyKind::Advection: return std::abs(p.speed) * nd;
    case FamilyKind::AdvectionTdep: return 1.5 * std::abs(p.speed) * nd;
    case FamilyKind::Diffusion: return 4.0 * std::abs(p.viscosity) * nd * nd;
  }
  return 0.0;
}

int calibrated_steps(FamilyKind kind, std::size_t n, const FamilyParams& p, double span, const SweepOptions& opts) {
  const double raw = std::ceil(norm_bound(kind, n, p) * span / opts.stiffness_step);
  // Multiple of 4 so the kappa sample points fall on the step grid.
  const int steps = std::max(opts.min_steps, static_cast<int>(raw));
  return (steps + 3) / 4 * 4;
}

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

GeneratorSpec build(FamilyKind kind, std::size_t n, const FamilyParams& params, double horizon) {
  if (n < 4) throw Error(ErrorKind::InvalidSize, "grid size " + std::to_string(n) + " < 4");
  const std::string id = std::string(to_string(kind)) + "-" + std::to_string(n);
  switch (kind) {
    case FamilyKind::Advection:
      return constant_generator(id, first_difference(n) * cplx{params.speed, 0.0}, horizon);
    case FamilyKind::Diffusion:
      return constant_generator(id, second_difference(n) * cplx{params.viscosity, 0.0}, horizon);
    case FamilyKind::AdvectionTdep:
      return modulated_generator(id, first_difference(n) * cplx{params.speed, 0.0}, advection_modulation, horizon);
  }
  throw Error(ErrorKind::InvalidArgument, "unknown family kind");
}

ComplexMatrix grid_potential(std::size_t n, double amplitude) {
  ComplexMatrix b(n);
  for (std::size_t j = 0; j < n; ++j) {
    b(j, j) = amplitude * std::cos(2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n));
  }
  return b;
}

double sweep_cost(const DiscretizedFamily& family, double t, double s, const SweepOptions& opts) {
  double total = 0.0;
  for (std::size_t n : family.dims) {
    if (n < 4) continue;
    const double n3 = std::pow(static_cast<double>(n), 3);
    const int steps = calibrated_steps(family.kind, n, family.params, t - s, opts);
    // Main propagation, five recovery propagations and two semigroup
    // pieces, four products per RK4 step; plus the logarithms.
    total += n3 * (4.0 * 8.0 * steps + 600.0);
  }
  return total;
}

double expected_growth_slope(FamilyKind kind) { return kind == FamilyKind::Diffusion ? 2.0 : 1.0; }

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) return kNaN;
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    mx += std::log(x[k]);
    my += std::log(y[k]);
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(y.size());
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double dx = std::log(x[k]) - mx;
    sxy += dx * (std::log(y[k]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

SweepReport refinement_sweep(const DiscretizedFamily& family, double t, double s, const SweepOptions& opts) {
  if (family.dims.empty()) throw Error(ErrorKind::InvalidArgument, "sweep needs at least one grid size");
  if (!std::is_sorted(family.dims.begin(), family.dims.end())) {
    throw Error(ErrorKind::InvalidArgument, "sweep dims must be sorted ascending");
  }
  if (!(0.0 <= s && s < t)) throw Error(ErrorKind::InvalidArgument, "sweep needs 0 <= s < t");
  for (std::size_t n : family.dims) {
    if (n < 4) throw Error(ErrorKind::InvalidSize, "grid size " + std::to_string(n) + " < 4");
  }
  const double cost = sweep_cost(family, t, s, opts);
  if (cost > opts.budget) {
    std::ostringstream msg;
    msg << "estimated " << cost << " multiply-adds exceeds budget " << opts.budget;
    throw Error(ErrorKind::BudgetExceeded, msg.str());
  }

  SweepReport report;
  report.family = family;
  report.t = t;
  report.s = s;
  const double span = t - s;
  const double horizon = std::max(1.0, t + 4.0 * opts.fd.h);

  for (std::size_t n : family.dims) {
    SweepRow row;
    row.n = n;
    const GeneratorSpec g = build(family.kind, n, family.params, horizon);
    const ComplexMatrix a_gen = g.eval(s);
    const ComplexMatrix b_gen = grid_potential(n, family.params.potential);
    row.norm_A = norm_1(a_gen);
    row.steps = calibrated_steps(family.kind, n, family.params, span, opts);

    // U1(tau_k, s) at four points, built piecewise so the last one is U1(t, s).
    std::vector<EvolutionOperator> family_ops;
    ComplexMatrix u = ComplexMatrix::identity(n);
    for (int k = 1; k <= 4; ++k) {
      const double lo = s + span * (k - 1) / 4.0;
      const double hi = s + span * k / 4.0;
      u = propagate(g, hi, lo, row.steps / 4).u * u;
      family_ops.push_back({u, hi, s, g.id, Stepper::RK4, row.steps * k / 4, std::nullopt});
    }
    const ComplexMatrix u1 = u;
    const ComplexMatrix u2 = expm(b_gen * cplx{span, 0.0});
    family_ops.push_back({u2, t, s, "potential", Stepper::RK4, 0, std::nullopt});

    // One kappa shared by both families.
    const KappaChoice kc = select_kappa(family_ops);
    row.kappa = kc.kappa.real();
    const ComplexMatrix a1 = alt_generator(u1, kc.kappa);
    const ComplexMatrix a2 = alt_generator(u2, kc.kappa);
    row.norm_a = norm_1(a1);

    try {
      const ComplexMatrix lhs = expm(a_gen * cplx{span, 0.0}) * u2;
      row.residual_naive = norm_1(lhs - expm(bch_truncated(a_gen * cplx{span, 0.0}, b_gen * cplx{span, 0.0}, 2)));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Overflow) throw;
      row.residual_naive = std::numeric_limits<double>::infinity();
    }

    const Theorem2Comparison thm2 = theorem2_compare(a1, a2, kc.kappa, 2, false);
    row.residual_thm2 = thm2.residual;
    row.thm2_precondition = thm2.precondition_holds;

    try {
      RecoveryOptions ro;
      ro.fd = opts.fd;
      ro.steps = row.steps;
      const ComplexMatrix recovered = recover_generator(g, s, t, kc.kappa, ro);
      const ComplexMatrix exact = g.eval(t);
      row.residual_eq6 = norm_1(recovered - exact) / norm_1(exact);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::SingularMatrix && e.kind() != ErrorKind::EvaluationFailure) throw;
      row.residual_eq6 = kNaN;
    }

    row.semigroup_residual = check_semigroup(g, s, s + 0.5 * span, t, row.steps);
    report.rows.push_back(row);
  }

  std::vector<double> ns, norms_A, norms_a;
  for (const auto& r : report.rows) {
    ns.push_back(static_cast<double>(r.n));
    norms_A.push_back(r.norm_A);
    norms_a.push_back(r.norm_a);
  }
  for (auto& r : report.rows) r.norm_A_ratio = r.norm_A / report.rows.front().norm_A;
  report.growth_slope = ns.size() >= 2 ? loglog_slope(ns, norms_A) : kNaN;
  report.band_ratio = *std::max_element(norms_a.begin(), norms_a.end()) /
                      *std::min_element(norms_a.begin(), norms_a.end());
  report.norms_increasing = std::adjacent_find(norms_A.begin(), norms_A.end(),
                                               [](double a, double b) { return !(b > a); }) == norms_A.end();
  return report;
}

bool sweep_invariants_hold(const SweepReport& report) {
  if (report.rows.empty()) return false;
  const bool band = report.band_ratio <= 4.0;
  if (report.rows.size() == 1) return band;
  const bool slope = std::abs(report.growth_slope - expected_growth_slope(report.family.kind)) <= 0.2;
  return band && slope && report.norms_increasing;
}

}  // namespace opcalc

#include "opcalc/logrep.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "opcalc/error.hpp"
#include "opcalc/linalg.hpp"

namespace opcalc {

namespace {

int steps_for(double span, int steps_per_unit) {
  return std::max(1, static_cast<int>(std::ceil(span * steps_per_unit - 1e-9)));
}

ComplexMatrix shifted(const ComplexMatrix& u, cplx kappa) {
  ComplexMatrix m = u;
  m.add_identity(kappa);
  return m;
}

}  // namespace

KappaChoice select_kappa(std::span<const EvolutionOperator> family, double margin) {
  if (family.empty()) throw Error(ErrorKind::InvalidArgument, "select_kappa needs a non-empty family");
  if (!(margin >= 2.0)) throw Error(ErrorKind::InvalidArgument, "kappa margin must be at least 2");
  KappaChoice choice;
  choice.margin = margin;
  for (const auto& op : family) choice.sup_norm = std::max(choice.sup_norm, norm_1(op.u));
  choice.kappa = margin * choice.sup_norm;
  for (const auto& op : family) {
    // Resolvent check; throws SingularMatrix if kappa hits the spectrum.
    (void)inverse(shifted(op.u, choice.kappa));
  }
  return choice;
}

std::vector<EvolutionOperator> sample_family(const GeneratorSpec& g, double s, std::span<const double> times,
                                             int steps_per_unit, Stepper stepper) {
  std::vector<EvolutionOperator> family;
  family.reserve(times.size());
  for (double tau : times) family.push_back(propagate(g, tau, s, steps_for(tau - s, steps_per_unit), stepper));
  return family;
}

ComplexMatrix alt_generator(const ComplexMatrix& u, cplx kappa) {
  const ComplexMatrix m = shifted(u, kappa);
  if (!principal_log_admissible(m)) {
    std::ostringstream msg;
    msg << "U + kappa I with kappa = " << kappa
        << " is not certified off the branch cut; increase |kappa|";
    throw Error(ErrorKind::BranchCutViolation, msg.str());
  }
  return logm_iss(m);
}

ComplexMatrix alt_generator(const EvolutionOperator& u, cplx kappa) { return alt_generator(u.u, kappa); }

LogRepresentation build_log_representation(const GeneratorSpec& g,
                                           std::span<const std::pair<double, double>> grid, cplx kappa,
                                           int steps_per_unit, Stepper stepper) {
  LogRepresentation rep;
  rep.kappa = kappa;
  rep.generator_id = g.id;
  rep.entries.reserve(grid.size());
  for (const auto& [t, s] : grid) {
    const auto u = propagate(g, t, s, steps_for(t - s, steps_per_unit), stepper);
    rep.entries.push_back({t, s, alt_generator(u, kappa)});
  }
  return rep;
}

double reexponentiation_residual(const GeneratorSpec& g, const LogRepresentation& rep, int steps_per_unit,
                                 Stepper stepper) {
  double worst = 0.0;
  for (const auto& e : rep.entries) {
    const ComplexMatrix target =
        shifted(propagate(g, e.t, e.s, steps_for(e.t - e.s, steps_per_unit), stepper).u, rep.kappa);
    worst = std::max(worst, norm_1(expm(e.a) - target) / norm_1(target));
  }
  return worst;
}

ComplexMatrix recover_generator(const GeneratorSpec& g, double s, double t, cplx kappa,
                                const RecoveryOptions& opts) {
  validate(opts.fd);
  if (!(t - opts.fd.h >= s && t + opts.fd.h <= g.horizon)) {
    std::ostringstream msg;
    msg << "t = " << t << " must sit at least h = " << opts.fd.h << " inside [" << s << ", " << g.horizon
        << "]";
    throw Error(ErrorKind::InvalidArgument, msg.str());
  }
  // Every tau uses the same step count so the stepper error is a smooth
  // function of tau and largely cancels in the difference quotient.
  const auto a_of = [&](double tau) {
    return alt_generator(propagate(g, tau, s, opts.steps, opts.stepper).u, kappa);
  };
  const ComplexMatrix da = fd_derivative(a_of, t, opts.fd, 1);
  const ComplexMatrix a = a_of(t);

  ComplexMatrix prefactor = expm(-a) * (-kappa);
  prefactor.add_identity(1.0);
  try {
    return solve(prefactor, da);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::SingularMatrix) throw;
    std::ostringstream msg;
    msg << "I - kappa e^{-a} singular for kappa = " << kappa << " at t = " << t << " (" << e.what() << ")";
    throw Error(ErrorKind::SingularMatrix, msg.str());
  }
}

AsymmetryReport check_asymmetry(const ComplexMatrix& u, cplx kappa) {
  AsymmetryReport r;
  // e^{-a} with e^{a} = U + kappa I is exactly this inverse.
  r.lhs = inverse(shifted(u, kappa));
  r.rhs = shifted(inverse(u), kappa);
  r.gap = norm_1(r.lhs - r.rhs);
  return r;
}

AsymmetryReport check_asymmetry(const GeneratorSpec& g, double s, double t, cplx kappa, int steps) {
  return check_asymmetry(propagate(g, t, s, steps).u, kappa);
}

}  // namespace opcalc

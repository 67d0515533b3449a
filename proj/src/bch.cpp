#include "opcalc/bch.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "opcalc/error.hpp"

namespace opcalc {

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b - b * a; }

ComplexMatrix adjoint_series(const ComplexMatrix& a1, const ComplexMatrix& a2, int terms) {
  if (terms < 0) throw Error(ErrorKind::InvalidArgument, "adjoint series needs N >= 0");
  ComplexMatrix sum = a2;
  ComplexMatrix term = a2;
  for (int n = 1; n <= terms; ++n) {
    term = commutator(a1, term);
    term *= cplx{1.0 / n, 0.0};
    sum += term;
  }
  return sum;
}

ComplexMatrix log_product(const ComplexMatrix& x, const ComplexMatrix& y) { return logm_iss(expm(x) * expm(y)); }

BchTruncation bch_truncation(int order) {
  if (order < 1 || order > 4) throw Error(ErrorKind::InvalidArgument, "BCH truncation order must be in 1..4");
  BchTruncation tr;
  tr.order = order;
  tr.terms = {{1, 1, "X"}, {1, 1, "Y"}};
  if (order >= 2) tr.terms.push_back({1, 2, "XY"});
  if (order >= 3) {
    tr.terms.push_back({1, 12, "XXY"});
    tr.terms.push_back({-1, 12, "YXY"});
  }
  if (order >= 4) tr.terms.push_back({-1, 24, "YXXY"});
  return tr;
}

ComplexMatrix evaluate(const BchTruncation& truncation, const ComplexMatrix& x, const ComplexMatrix& y) {
  if (x.dim() != y.dim()) throw Error(ErrorKind::DimensionMismatch, "BCH arguments differ in size");
  const auto letter = [&](char c) -> const ComplexMatrix& {
    if (c == 'X') return x;
    if (c == 'Y') return y;
    throw Error(ErrorKind::InvalidArgument, std::string("unknown BCH letter '") + c + "'");
  };
  ComplexMatrix sum(x.dim());
  for (const auto& term : truncation.terms) {
    if (term.word.empty()) throw Error(ErrorKind::InvalidArgument, "empty BCH word");
    ComplexMatrix nested = letter(term.word.back());
    for (auto it = term.word.rbegin() + 1; it != term.word.rend(); ++it) nested = commutator(letter(*it), nested);
    sum += nested * cplx{static_cast<double>(term.num) / static_cast<double>(term.den), 0.0};
  }
  return sum;
}

ComplexMatrix bch_truncated(const ComplexMatrix& x, const ComplexMatrix& y, int order) {
  return evaluate(bch_truncation(order), x, y);
}

Lemma2Check lemma2_condition(const ComplexMatrix& a, const ComplexMatrix& b, double delta,
                             std::span<const double> tgrid) {
  if (!(delta > 0.0 && delta <= std::sqrt(2.0))) {
    std::ostringstream msg;
    msg << "delta = " << delta << " outside (0, sqrt(2)]";
    throw Error(ErrorKind::InvalidArgument, msg.str());
  }
  Lemma2Check out;
  for (double t : tgrid) {
    if (!(t >= 0.0 && t <= 1.0)) throw Error(ErrorKind::InvalidArgument, "grid points must lie in [0, 1]");
    const ComplexMatrix ea = expm(a * cplx{t, 0.0});
    const ComplexMatrix eb = expm(b * cplx{t, 0.0});
    out.max_norm_a = std::max(out.max_norm_a, norm_1(ea));
    out.max_norm_b = std::max(out.max_norm_b, norm_1(eb));
    out.max_norm_product = std::max(out.max_norm_product, norm_1(ea * eb));
  }
  out.holds = out.max_norm_a < delta && out.max_norm_b < delta;
  out.product_below_two = out.max_norm_product < 2.0;
  return out;
}

Theorem2Comparison theorem2_compare(const ComplexMatrix& a1, const ComplexMatrix& a2, cplx kappa, int order,
                                    bool enforce_precondition) {
  if (order != 1 && order != 2) throw Error(ErrorKind::InvalidArgument, "theorem2_compare order must be 1 or 2");
  if (a1.dim() != a2.dim()) throw Error(ErrorKind::DimensionMismatch, "generators differ in size");
  const cplx shift = kappa + 1.0;
  if (std::abs(shift) == 0.0) throw Error(ErrorKind::ConvergenceViolation, "kappa = -1");
  Theorem2Comparison out;
  const ComplexMatrix product = expm(a1) * expm(a2);
  ComplexMatrix z = product;
  z.add_identity(-1.0);
  out.series_argument_norm = norm_1(z) / std::abs(shift);
  out.precondition_holds = out.series_argument_norm < 1.0;
  if (enforce_precondition && !out.precondition_holds) {
    std::ostringstream msg;
    msg << "||(e^{a1} e^{a2} - I)/(kappa+1)||_1 = " << out.series_argument_norm << " >= 1 for kappa = " << kappa;
    throw Error(ErrorKind::ConvergenceViolation, msg.str());
  }

  out.lhs = product;
  out.lhs.add_identity(kappa);

  const cplx inv = 1.0 / shift;
  const ComplexMatrix sum = a1 + a2;
  const ComplexMatrix comm = commutator(a1, a2);
  ComplexMatrix exponent = sum * inv;
  exponent.add_identity(std::log(shift));
  if (order == 2) exponent += comm * (0.5 * inv);
  out.rhs = expm(exponent);
  out.residual = norm_1(out.lhs - out.rhs);

  // Log((kappa+1)(I + Z/(kappa+1))) with Z = S + (S^2 + C)/2 + O(3):
  // the -Z^2/(2(kappa+1)^2) term contributes -S^2/(2(kappa+1)^2).
  ComplexMatrix full = exponent;
  if (order == 1) full += comm * (0.5 * inv);
  const ComplexMatrix sum_sq = sum * sum;
  full += sum_sq * (0.5 * inv - 0.5 * inv * inv);
  out.second_order_residual = norm_1(out.lhs - expm(full));
  return out;
}

void validate(const VonNeumannConfig& cfg) {
  if (!(cfg.hbar > 0.0)) throw Error(ErrorKind::InvalidArgument, "hbar must be positive");
  if (cfg.quadrature_panels < 1) throw Error(ErrorKind::InvalidArgument, "need at least one Simpson panel");
  validate(cfg.fd);
}

namespace {

ComplexMatrix simpson(const MatrixCurve& f, double upper, int panels) {
  const int intervals = 2 * panels;
  const double h = upper / intervals;
  ComplexMatrix acc = f(0.0) + f(upper);
  for (int k = 1; k < intervals; ++k) acc += f(k * h) * cplx{(k % 2 == 1) ? 4.0 : 2.0, 0.0};
  return acc * cplx{h / 3.0, 0.0};
}

}  // namespace

Theorem3Report theorem3_expand(const MatrixCurve& a1, const MatrixCurve& a2, const VonNeumannConfig& cfg) {
  validate(cfg);
  const ComplexMatrix a1_0 = a1(0.0);
  const ComplexMatrix a2_0 = a2(0.0);

  const auto exponent = [&](const MatrixCurve& a, const ComplexMatrix& a_0, double sigma) {
    if (cfg.mode == ExponentMode::Frozen) return a_0 * cplx{sigma, 0.0};
    if (sigma == 0.0) return ComplexMatrix::zero(a_0.dim());
    return simpson(a, sigma, cfg.quadrature_panels);
  };
  const MatrixCurve f = [&](double sigma) {
    return log_product(exponent(a1, a1_0, sigma), exponent(a2, a2_0, sigma));
  };

  Theorem3Report r;
  r.first_derivative = fd_derivative(f, 0.0, cfg.fd, 1);
  r.second_derivative = fd_derivative(f, 0.0, cfg.fd, 2);
  r.sum = a1_0 + a2_0;
  r.commutator = commutator(a1_0, a2_0);
  if (cfg.mode == ExponentMode::Frozen) {
    r.drift = ComplexMatrix::zero(a1_0.dim());
  } else {
    r.drift = fd_derivative([&](double sigma) { return a1(sigma) + a2(sigma); }, 0.0, cfg.fd, 1);
  }
  r.first_residual = norm_1(r.first_derivative - r.sum);
  r.second_residual = norm_1(r.second_derivative - r.commutator);
  r.second_residual_with_drift = norm_1(r.second_derivative - r.commutator - r.drift);
  return r;
}

ComplexMatrix von_neumann_second_derivative(const ComplexMatrix& x, const ComplexMatrix& y,
                                            const VonNeumannConfig& cfg) {
  validate(cfg);
  if (x.dim() != y.dim()) throw Error(ErrorKind::DimensionMismatch, "arguments differ in size");
  const MatrixCurve f = [&](double s) { return log_product(x * cplx{s, 0.0}, y * cplx{s, 0.0}); };
  return fd_derivative(f, 0.0, cfg.fd, 2);
}

VonNeumannReport von_neumann_rhs(const ComplexMatrix& rho0, const ComplexMatrix& h, const VonNeumannConfig& cfg,
                                 std::span<const double> tgrid, int rk4_steps) {
  validate(cfg);
  if (rho0.dim() != h.dim()) throw Error(ErrorKind::DimensionMismatch, "rho0 and H differ in size");
  if (rk4_steps < 1) throw Error(ErrorKind::InvalidArgument, "rk4_steps must be positive");
  const cplx prefactor{0.0, 1.0 / cfg.hbar};
  const auto rhs = [&](const ComplexMatrix& rho) { return commutator(rho, h) * prefactor; };

  // Fixed step count for every end time keeps rho(tau) smooth in tau.
  const MatrixCurve rho_at = [&](double tau) {
    ComplexMatrix rho = rho0;
    const double dt = tau / rk4_steps;
    if (dt == 0.0) return rho;
    const cplx half{0.5 * dt, 0.0};
    const cplx full{dt, 0.0};
    for (int k = 0; k < rk4_steps; ++k) {
      const ComplexMatrix k1 = rhs(rho);
      const ComplexMatrix k2 = rhs(rho + k1 * half);
      const ComplexMatrix k3 = rhs(rho + k2 * half);
      const ComplexMatrix k4 = rhs(rho + k3 * full);
      rho += (k1 + k4 + 2.0 * (k2 + k3)) * cplx{dt / 6.0, 0.0};
    }
    if (!rho.all_finite()) throw Error(ErrorKind::StepFailure, "density evolution produced non-finite entries");
    return rho;
  };

  VonNeumannReport report;
  const cplx trace0 = rho0.trace();
  for (double t : tgrid) {
    VonNeumannPoint p;
    p.t = t;
    p.rho = rho_at(t);
    const ComplexMatrix drho = fd_derivative(rho_at, t, cfg.fd, 1);
    const ComplexMatrix side = von_neumann_second_derivative(p.rho, h, cfg) * prefactor;
    p.residual = norm_1(drho - side);
    p.commutator_side_norm = norm_1(side);
    p.trace_drift = std::abs(p.rho.trace() - trace0);
    report.max_residual = std::max(report.max_residual, p.residual);
    report.max_trace_drift = std::max(report.max_trace_drift, p.trace_drift);
    report.points.push_back(std::move(p));
  }
  return report;
}

}  // namespace opcalc

#include "opcalc/matfun.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "opcalc/error.hpp"
#include "opcalc/linalg.hpp"

namespace opcalc {

namespace {

constexpr double kExpmMaxNorm = 1e4;
constexpr double kExpmScaledNorm = 0.5;
constexpr int kTaylorMaxTerms = 60;

constexpr int kSqrtMaxIterations = 60;
constexpr double kSqrtTolerance = 1e-13;

constexpr double kLogSeriesRadius = 0.25;
constexpr int kLogMaxSquareRoots = 64;
constexpr int kLogMaxTerms = 400;

constexpr int kContourMaxNodes = 4096;
constexpr double kContourTolerance = 1e-9;

ComplexMatrix sqrtm_db_unchecked(const ComplexMatrix& m) {
  const std::size_t n = m.dim();
  ComplexMatrix y = m;
  ComplexMatrix z = ComplexMatrix::identity(n);
  double prev_diff = INFINITY;
  for (int it = 0; it < kSqrtMaxIterations; ++it) {
    ComplexMatrix y_next = 0.5 * (y + inverse(z));
    ComplexMatrix z_next = 0.5 * (z + inverse(y));
    const double diff = norm_1(y_next - y);
    const double scale = norm_1(y);
    y = std::move(y_next);
    z = std::move(z_next);
    if (diff <= kSqrtTolerance * scale) return y;
    // Rounding floor reached: the quadratic phase is over and the step no
    // longer shrinks.
    if (diff >= prev_diff && diff <= 1e-10 * scale) return y;
    prev_diff = diff;
  }
  throw Error(ErrorKind::NoConvergence,
              "Denman-Beavers iteration did not converge in " + std::to_string(kSqrtMaxIterations) +
                  " iterations");
}

// log(I + E) by its Taylor series; requires norm_1(E) well below 1.
ComplexMatrix log_series(const ComplexMatrix& e) {
  const std::size_t n = e.dim();
  ComplexMatrix sum(n);
  ComplexMatrix power = e;
  for (int j = 1; j <= kLogMaxTerms; ++j) {
    const double sign = (j % 2 == 1) ? 1.0 : -1.0;
    ComplexMatrix term = power * cplx{sign / j, 0.0};
    sum += term;
    const double term_norm = norm_1(term);
    if (term_norm == 0.0 || term_norm < 1e-16 * norm_1(sum)) return sum;
    power = power * e;
  }
  throw Error(ErrorKind::NoConvergence, "logarithm series did not converge");
}

}  // namespace

void validate(const ContourSpec& contour) {
  if (!(contour.radius > 0.0) || !std::isfinite(contour.radius)) {
    throw Error(ErrorKind::ContourInvalid, "contour radius must be positive");
  }
  if (contour.nodes <= 0) throw Error(ErrorKind::ContourInvalid, "contour needs at least one node");
  if (!(distance_to_branch_cut(contour.center) > contour.radius)) {
    std::ostringstream msg;
    msg << "circle(" << contour.center << ", " << contour.radius << ") meets the branch cut (-inf, 0]";
    throw Error(ErrorKind::ContourInvalid, msg.str());
  }
}

ContourSpec auto_contour(const ComplexMatrix& m, int nodes) {
  const SpectralEnclosure rows = spectral_enclosure(m);
  const SpectralEnclosure cols = column_enclosure(m);
  const SpectralEnclosure& enc = rows.radius <= cols.radius ? rows : cols;
  const double dist = distance_to_branch_cut(enc.center);
  if (!(dist > enc.radius)) {
    throw Error(ErrorKind::ContourInvalid, "Gershgorin enclosure touches the branch cut");
  }
  ContourSpec c;
  c.center = enc.center;
  // Geometric mean balances the two geometric convergence ratios
  // (spectrum/contour and contour/branch point).
  c.radius = enc.radius > 0.0 ? std::sqrt(enc.radius * dist) : 0.5 * dist;
  c.nodes = nodes;
  return c;
}

void validate(const FdConfig& cfg) {
  if (!(cfg.h > 0.0) || !std::isfinite(cfg.h)) {
    throw Error(ErrorKind::InvalidArgument, "finite-difference step must be positive");
  }
  if (cfg.richardson_levels < 0 || cfg.richardson_levels > 3) {
    throw Error(ErrorKind::InvalidArgument, "richardson_levels must lie in [0, 3]");
  }
}

ComplexMatrix expm(const ComplexMatrix& a) {
  if (!a.all_finite()) throw Error(ErrorKind::Overflow, "expm argument has non-finite entries");
  const double norm = norm_1(a);
  if (norm > kExpmMaxNorm) {
    std::ostringstream msg;
    msg << "norm_1 = " << norm << " exceeds " << kExpmMaxNorm;
    throw Error(ErrorKind::Overflow, msg.str());
  }
  const std::size_t n = a.dim();

  int squarings = 0;
  double scaled = norm;
  while (scaled > kExpmScaledNorm) {
    scaled *= 0.5;
    ++squarings;
  }
  const ComplexMatrix b = a * cplx{std::ldexp(1.0, -squarings), 0.0};

  ComplexMatrix sum = ComplexMatrix::identity(n);
  ComplexMatrix term = ComplexMatrix::identity(n);
  for (int k = 1; k <= kTaylorMaxTerms; ++k) {
    term = term * b;
    term *= cplx{1.0 / k, 0.0};
    sum += term;
    const double tn = norm_1(term);
    if (tn == 0.0 || tn < 1e-16 * norm_1(sum)) break;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  if (!sum.all_finite()) throw Error(ErrorKind::Overflow, "expm result overflowed");
  return sum;
}

ComplexMatrix sqrtm_db(const ComplexMatrix& m) {
  if (!principal_log_admissible(m)) {
    throw Error(ErrorKind::BranchCutViolation,
                "spectrum of the argument cannot be certified off (-inf, 0]");
  }
  return sqrtm_db_unchecked(m);
}

ComplexMatrix logm_iss(const ComplexMatrix& m) {
  if (!principal_log_admissible(m)) {
    throw Error(ErrorKind::BranchCutViolation,
                "spectrum of the argument cannot be certified off (-inf, 0]");
  }
  const std::size_t n = m.dim();
  const ComplexMatrix id = ComplexMatrix::identity(n);

  // Square roots of a matrix with spectrum off the cut keep it off the cut,
  // so only the input needs the admissibility certificate.
  ComplexMatrix x = m;
  int roots = 0;
  while (norm_1(x - id) > kLogSeriesRadius) {
    if (roots == kLogMaxSquareRoots) {
      throw Error(ErrorKind::NoConvergence, "too many square roots in inverse scaling and squaring");
    }
    x = sqrtm_db_unchecked(x);
    ++roots;
  }
  ComplexMatrix result = log_series(x - id);
  result *= cplx{std::ldexp(1.0, roots), 0.0};
  return result;
}

ComplexMatrix logm_contour(const ComplexMatrix& m, const ContourSpec& contour) {
  validate(contour);
  const auto inside = [&](const SpectralEnclosure& enc) {
    for (const auto& d : enc.discs) {
      if (!(std::abs(d.center - contour.center) + d.radius < contour.radius)) return false;
    }
    return true;
  };
  if (!inside(spectral_enclosure(m)) && !inside(column_enclosure(m))) {
    throw Error(ErrorKind::ContourInvalid, "Gershgorin discs are not enclosed by the contour");
  }

  const std::size_t n = m.dim();
  const ComplexMatrix id = ComplexMatrix::identity(n);

  // Sum over nodes k = first, first + stride, ... < count of the trapezoid
  // weights for theta_k = 2 pi k / count (without the 1/count factor).
  const auto partial = [&](int count, int first, int stride) {
    ComplexMatrix acc(n);
    for (int k = first; k < count; k += stride) {
      const double theta = 2.0 * std::numbers::pi * k / count;
      const cplx w = contour.radius * cplx{std::cos(theta), std::sin(theta)};
      const cplx z = contour.center + w;
      ComplexMatrix shifted = -m;
      shifted.add_identity(z);
      acc += (std::log(z) * w) * solve(shifted, id);
    }
    return acc;
  };

  int count = contour.nodes;
  ComplexMatrix sum = partial(count, 0, 1);
  ComplexMatrix current = sum * cplx{1.0 / count, 0.0};
  while (true) {
    const int next = 2 * count;
    if (next > kContourMaxNodes) {
      throw Error(ErrorKind::NoConvergence,
                  "contour quadrature not converged at " + std::to_string(kContourMaxNodes) + " nodes");
    }
    // Nodes of the doubled rule are the old ones plus the odd midpoints.
    sum += partial(next, 1, 2);
    ComplexMatrix refined = sum * cplx{1.0 / next, 0.0};
    const double diff = norm_1(refined - current);
    current = std::move(refined);
    count = next;
    if (diff < kContourTolerance * std::max(1.0, norm_1(current))) return current;
  }
}

ComplexMatrix fd_derivative(const MatrixCurve& f, double t0, const FdConfig& cfg, int order) {
  validate(cfg);
  if (order != 1 && order != 2) throw Error(ErrorKind::InvalidArgument, "derivative order must be 1 or 2");

  const auto eval = [&](double t) {
    try {
      ComplexMatrix v = f(t);
      if (!v.all_finite()) throw Error(ErrorKind::EvaluationFailure, "non-finite curve value");
      return v;
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::EvaluationFailure) throw;
      std::ostringstream msg;
      msg << "curve evaluation at t = " << t << " failed: " << e.what();
      throw Error(ErrorKind::EvaluationFailure, msg.str());
    }
  };

  const ComplexMatrix center = order == 2 ? eval(t0) : ComplexMatrix{};
  const auto difference = [&](double step) {
    ComplexMatrix plus = eval(t0 + step);
    ComplexMatrix minus = eval(t0 - step);
    if (order == 1) return (plus - minus) * cplx{0.5 / step, 0.0};
    return (plus + minus - 2.0 * center) * cplx{1.0 / (step * step), 0.0};
  };

  const int levels = cfg.richardson_levels;
  std::vector<ComplexMatrix> table;
  table.reserve(levels + 1);
  for (int j = 0; j <= levels; ++j) table.push_back(difference(std::ldexp(cfg.h, -j)));
  // Central differences expand in even powers of the step, so level m
  // eliminates the h^{2m} term with weight 4^m.
  for (int m = 1; m <= levels; ++m) {
    const double w = std::ldexp(1.0, 2 * m);
    for (int j = 0; j + m <= levels; ++j) {
      table[j] = (w * table[j + 1] - table[j]) * cplx{1.0 / (w - 1.0), 0.0};
    }
  }
  return table.front();
}

}  // namespace opcalc

#pragma once
// Reference computations for the tests. Everything here is written
// independently of the library kernels (own storage, long double, different
// algorithms) so that agreement is evidence rather than tautology.

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "opcalc/matrix.hpp"

namespace oracle {

using lcplx = std::complex<long double>;

struct LMat {
  std::size_t n = 0;
  std::vector<lcplx> a;

  explicit LMat(std::size_t dim) : n(dim), a(dim * dim) {}
  lcplx& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
  const lcplx& operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }

  static LMat identity(std::size_t dim) {
    LMat m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0L;
    return m;
  }
};

inline LMat from(const opcalc::ComplexMatrix& m) {
  LMat out(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i) {
    for (std::size_t j = 0; j < m.dim(); ++j) out(i, j) = lcplx(m(i, j).real(), m(i, j).imag());
  }
  return out;
}

inline opcalc::ComplexMatrix to(const LMat& m) {
  opcalc::ComplexMatrix out(m.n);
  for (std::size_t i = 0; i < m.n; ++i) {
    for (std::size_t j = 0; j < m.n; ++j) {
      out(i, j) = {static_cast<double>(m(i, j).real()), static_cast<double>(m(i, j).imag())};
    }
  }
  return out;
}

inline LMat mul(const LMat& x, const LMat& y) {
  LMat z(x.n);
  for (std::size_t i = 0; i < x.n; ++i) {
    for (std::size_t j = 0; j < x.n; ++j) {
      lcplx acc = 0;
      for (std::size_t k = 0; k < x.n; ++k) acc += x(i, k) * y(k, j);
      z(i, j) = acc;
    }
  }
  return z;
}

inline LMat axpy(lcplx alpha, const LMat& x, const LMat& y) {
  LMat z = y;
  for (std::size_t k = 0; k < z.a.size(); ++k) z.a[k] += alpha * x.a[k];
  return z;
}

inline long double max_abs(const LMat& m) {
  long double best = 0;
  for (const auto& z : m.a) best = std::max(best, std::abs(z));
  return best;
}

/// Gauss-Jordan inverse with full pivoting.
inline LMat inverse(LMat m) {
  const std::size_t n = m.n;
  LMat inv = LMat::identity(n);
  std::vector<std::size_t> col_of(n);
  for (std::size_t k = 0; k < n; ++k) col_of[k] = k;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pr = k, pc = k;
    long double best = -1;
    for (std::size_t i = k; i < n; ++i) {
      for (std::size_t j = k; j < n; ++j) {
        if (std::abs(m(i, j)) > best) {
          best = std::abs(m(i, j));
          pr = i;
          pc = j;
        }
      }
    }
    if (best == 0) throw std::runtime_error("oracle: singular matrix");
    for (std::size_t j = 0; j < n; ++j) {
      std::swap(m(k, j), m(pr, j));
      std::swap(inv(k, j), inv(pr, j));
    }
    // Column swap in m is undone on the rows of the inverse afterwards.
    for (std::size_t i = 0; i < n; ++i) std::swap(m(i, k), m(i, pc));
    std::swap(col_of[k], col_of[pc]);
    const lcplx p = m(k, k);
    for (std::size_t j = 0; j < n; ++j) {
      m(k, j) /= p;
      inv(k, j) /= p;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      const lcplx f = m(i, k);
      if (f == lcplx(0)) continue;
      for (std::size_t j = 0; j < n; ++j) {
        m(i, j) -= f * m(k, j);
        inv(i, j) -= f * inv(k, j);
      }
    }
  }
  LMat out(n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < n; ++j) out(col_of[k], j) = inv(k, j);
  }
  return out;
}

/// Exponential: halve until max entry * n <= 1/8, plain Taylor to 30 terms.
inline opcalc::ComplexMatrix expm(const opcalc::ComplexMatrix& a) {
  LMat x = from(a);
  int squarings = 0;
  while (max_abs(x) * static_cast<long double>(x.n) > 0.125L) {
    for (auto& z : x.a) z /= 2.0L;
    ++squarings;
  }
  LMat sum = LMat::identity(x.n);
  LMat term = LMat::identity(x.n);
  for (int k = 1; k <= 30; ++k) {
    term = mul(term, x);
    for (auto& z : term.a) z /= static_cast<long double>(k);
    sum = axpy(1.0L, term, sum);
  }
  for (int k = 0; k < squarings; ++k) sum = mul(sum, sum);
  return to(sum);
}

/// Logarithm by the inverse hyperbolic tangent series
///   log M = 2 sum_{k odd} Z^k / k,  Z = (M - I)(M + I)^{-1},
/// after taking square roots (by Newton's iteration in long double) until
/// ||M - I|| is small. Valid for spectra in the open right half-plane.
inline opcalc::ComplexMatrix logm(const opcalc::ComplexMatrix& m_in) {
  LMat m = from(m_in);
  const std::size_t n = m.n;
  const LMat eye = LMat::identity(n);
  int roots = 0;
  while (max_abs(axpy(-1.0L, eye, m)) * static_cast<long double>(n) > 0.05L) {
    // Newton: Y <- (Y + M Y^{-1}) / 2 from Y = M (principal branch for
    // spectra off the negative axis).
    LMat y = m;
    for (int it = 0; it < 100; ++it) {
      LMat next = axpy(1.0L, mul(m, inverse(y)), y);
      for (auto& z : next.a) z /= 2.0L;
      const long double change = max_abs(axpy(-1.0L, y, next));
      y = next;
      if (change < 1e-18L * (1.0L + max_abs(y))) break;
    }
    m = y;
    if (++roots > 60) throw std::runtime_error("oracle: too many square roots");
  }
  const LMat z = mul(axpy(-1.0L, eye, m), inverse(axpy(1.0L, eye, m)));
  const LMat z2 = mul(z, z);
  LMat power = z;
  LMat sum(n);
  for (int k = 1; k <= 61; k += 2) {
    sum = axpy(2.0L / static_cast<long double>(k), power, sum);
    power = mul(power, z2);
  }
  for (auto& v : sum.a) v *= std::ldexp(1.0L, roots);
  return to(sum);
}

/// Entry-wise commutator.
inline opcalc::ComplexMatrix commutator(const opcalc::ComplexMatrix& x, const opcalc::ComplexMatrix& y) {
  const LMat lx = from(x), ly = from(y);
  return to(axpy(-1.0L, mul(ly, lx), mul(lx, ly)));
}

/// Max column sum, computed directly.
inline double norm1(const opcalc::ComplexMatrix& m) {
  double best = 0.0;
  for (std::size_t j = 0; j < m.dim(); ++j) {
    double col = 0.0;
    for (std::size_t i = 0; i < m.dim(); ++i) col += std::abs(m(i, j));
    best = std::max(best, col);
  }
  return best;
}

inline double diff1(const opcalc::ComplexMatrix& a, const opcalc::ComplexMatrix& b) {
  opcalc::ComplexMatrix d(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < a.dim(); ++j) d(i, j) = a(i, j) - b(i, j);
  }
  return norm1(d);
}

/// Ordinary least-squares slope of log y against log x.
inline double fit_loglog(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double lx = std::log(x[k]), ly = std::log(y[k]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

/// Composite Simpson rule on [a, b] with `panels` (even) panels.
template <class F>
double simpson(F&& f, double a, double b, int panels) {
  const double h = (b - a) / panels;
  double s = f(a) + f(b);
  for (int k = 1; k < panels; ++k) s += (k % 2 == 1 ? 4.0 : 2.0) * f(a + k * h);
  return s * h / 3.0;
}

}  // namespace oracle

#include "opcalc/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "opcalc/error.hpp"

namespace opcalc {

ComplexMatrix solve(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "solve: system and right-hand side differ in dimension");
  }
  const std::size_t n = a.dim();
  const double pivot_floor = 1e-14 * norm_1(a);

  ComplexMatrix lu = a;
  ComplexMatrix x = b;
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    double best = std::abs(lu(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const double v = std::abs(lu(i, k));
      if (v > best) {
        best = v;
        p = i;
      }
    }
    if (!(best >= pivot_floor) || best == 0.0) {
      std::ostringstream msg;
      msg << "pivot " << best << " below " << pivot_floor << " at column " << k;
      throw Error(ErrorKind::SingularMatrix, msg.str());
    }
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(lu(k, j), lu(p, j));
        std::swap(x(k, j), x(p, j));
      }
    }
    const cplx inv_pivot = 1.0 / lu(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const cplx factor = lu(i, k) * inv_pivot;
      if (factor == cplx{0.0, 0.0}) continue;
      lu(i, k) = factor;
      for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= factor * lu(k, j);
      for (std::size_t j = 0; j < n; ++j) x(i, j) -= factor * x(k, j);
    }
  }

  // Back substitution, all right-hand sides at once.
  for (std::size_t kk = n; kk-- > 0;) {
    const cplx inv_pivot = 1.0 / lu(kk, kk);
    for (std::size_t j = 0; j < n; ++j) x(kk, j) *= inv_pivot;
    for (std::size_t i = 0; i < kk; ++i) {
      const cplx factor = lu(i, kk);
      if (factor == cplx{0.0, 0.0}) continue;
      for (std::size_t j = 0; j < n; ++j) x(i, j) -= factor * x(kk, j);
    }
  }
  if (!x.all_finite()) throw Error(ErrorKind::SingularMatrix, "solve produced non-finite entries");
  return x;
}

ComplexMatrix inverse(const ComplexMatrix& a) { return solve(a, ComplexMatrix::identity(a.dim())); }

namespace {

SpectralEnclosure cover(std::vector<Disc> discs) {
  SpectralEnclosure enc;
  enc.discs = std::move(discs);
  if (enc.discs.empty()) return enc;

  double re_lo = INFINITY, re_hi = -INFINITY, im_lo = INFINITY, im_hi = -INFINITY;
  for (const auto& d : enc.discs) {
    re_lo = std::min(re_lo, d.center.real() - d.radius);
    re_hi = std::max(re_hi, d.center.real() + d.radius);
    im_lo = std::min(im_lo, d.center.imag() - d.radius);
    im_hi = std::max(im_hi, d.center.imag() + d.radius);
  }
  enc.center = {0.5 * (re_lo + re_hi), 0.5 * (im_lo + im_hi)};
  for (const auto& d : enc.discs) {
    enc.radius = std::max(enc.radius, std::abs(d.center - enc.center) + d.radius);
  }
  return enc;
}

}  // namespace

SpectralEnclosure spectral_enclosure(const ComplexMatrix& a) {
  const std::size_t n = a.dim();
  std::vector<Disc> discs(n);
  for (std::size_t i = 0; i < n; ++i) {
    double r = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) r += std::abs(a(i, j));
    discs[i] = {a(i, i), r};
  }
  return cover(std::move(discs));
}

SpectralEnclosure column_enclosure(const ComplexMatrix& a) { return spectral_enclosure(a.transpose()); }

double distance_to_branch_cut(cplx z) {
  if (z.real() <= 0.0) return std::abs(z.imag());
  return std::abs(z);
}

bool discs_clear_branch_cut(const std::vector<Disc>& discs) {
  return std::all_of(discs.begin(), discs.end(),
                     [](const Disc& d) { return distance_to_branch_cut(d.center) > d.radius; });
}

bool hermitian_part_positive_definite(const ComplexMatrix& a) {
  const std::size_t n = a.dim();
  // Cholesky of H = (A + A^*)/2 on the lower triangle.
  std::vector<cplx> l(n * n, cplx{0.0, 0.0});
  const double scale = std::max(norm_1(a), 1e-300);
  for (std::size_t j = 0; j < n; ++j) {
    double diag = a(j, j).real();
    for (std::size_t k = 0; k < j; ++k) diag -= std::norm(l[j * n + k]);
    if (!(diag > 1e-14 * scale)) return false;
    const double ljj = std::sqrt(diag);
    l[j * n + j] = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      cplx h = 0.5 * (a(i, j) + std::conj(a(j, i)));
      for (std::size_t k = 0; k < j; ++k) h -= l[i * n + k] * std::conj(l[j * n + k]);
      l[i * n + j] = h / ljj;
    }
  }
  return true;
}

bool principal_log_admissible(const ComplexMatrix& a) {
  if (!a.all_finite() || a.empty()) return false;
  return discs_clear_branch_cut(spectral_enclosure(a).discs) ||
         discs_clear_branch_cut(column_enclosure(a).discs) || hermitian_part_positive_definite(a);
}

}  // namespace opcalc

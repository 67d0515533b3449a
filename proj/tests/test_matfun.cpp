#include <doctest.h>

#include <cmath>
#include <numbers>

#include "helpers.hpp"
#include "opcalc/linalg.hpp"
#include "opcalc/matfun.hpp"
#include "opcalc/random.hpp"
#include "oracles.hpp"

using namespace opcalc;

TEST_CASE("expm closed forms") {
  CHECK(expm(ComplexMatrix::zero(3)) == ComplexMatrix::identity(3));

  const ComplexMatrix d = expm(ComplexMatrix::diagonal({1.0, -2.0, cplx{0, std::numbers::pi}}));
  CHECK(std::abs(d(0, 0) - std::exp(1.0)) < 1e-14);
  CHECK(std::abs(d(1, 1) - std::exp(-2.0)) < 1e-15);
  CHECK(std::abs(d(2, 2) + 1.0) < 1e-14);

  const double theta = 1.3;
  const ComplexMatrix rot = expm(ComplexMatrix{{0.0, theta}, {-theta, 0.0}});
  CHECK(oracle::diff1(rot, ComplexMatrix{{std::cos(theta), std::sin(theta)}, {-std::sin(theta), std::cos(theta)}}) < 1e-14);

  // Nilpotent: the series stops after the linear term.
  const ComplexMatrix n{{0.0, 5.0}, {0.0, 0.0}};
  CHECK(oracle::diff1(expm(n), ComplexMatrix{{1.0, 5.0}, {0.0, 1.0}}) < 1e-13);
}

TEST_CASE("expm against the long-double Taylor oracle") {
  Rng rng(101);
  for (std::size_t n : {2u, 4u, 8u}) {
    for (double norm : {0.01, 0.7, 3.0, 12.0}) {
      const ComplexMatrix a = rng.matrix(n, norm);
      const ComplexMatrix ref = oracle::expm(a);
      CHECK(oracle::diff1(expm(a), ref) <= 1e-12 * std::exp(norm));
      CHECK(oracle::diff1(expm(a) * expm(-a), ComplexMatrix::identity(n)) <= 1e-12 * std::exp(2 * norm));
    }
  }
}

TEST_CASE("expm rejects large arguments") {
  CHECK_ERROR_KIND(expm(ComplexMatrix::identity(2) * cplx{2e4, 0.0}), ErrorKind::Overflow);
}

TEST_CASE("logm_iss against the inverse-tanh oracle") {
  Rng rng(202);
  for (std::size_t n : {2u, 3u, 6u}) {
    for (double norm : {0.1, 0.9, 2.0}) {
      ComplexMatrix m = rng.matrix(n, norm);
      m.add_identity(norm + 1.0);
      const ComplexMatrix ref = oracle::logm(m);
      CHECK(oracle::diff1(logm_iss(m), ref) <= 1e-12 * std::max(1.0, oracle::norm1(ref)));
    }
  }
  CHECK(norm_1(logm_iss(ComplexMatrix::identity(4))) == 0.0);
  const ComplexMatrix l = logm_iss(ComplexMatrix::diagonal({std::exp(1.0), std::exp(2.0)}));
  CHECK(std::abs(l(0, 0) - 1.0) < 1e-14);
  CHECK(std::abs(l(1, 1) - 2.0) < 1e-14);
}

TEST_CASE("logarithm and square root refuse the negative axis") {
  CHECK_ERROR_KIND(logm_iss(-ComplexMatrix::identity(2)), ErrorKind::BranchCutViolation);
  CHECK_ERROR_KIND(sqrtm_db(ComplexMatrix::diagonal({1.0, -4.0})), ErrorKind::BranchCutViolation);
}

TEST_CASE("sqrtm_db") {
  const ComplexMatrix r = sqrtm_db(ComplexMatrix::diagonal({4.0, 9.0, cplx{0, 1}}));
  CHECK(std::abs(r(0, 0) - 2.0) < 1e-13);
  CHECK(std::abs(r(1, 1) - 3.0) < 1e-13);
  CHECK(std::abs(r(2, 2) - std::sqrt(cplx{0, 1})) < 1e-13);

  Rng rng(5);
  for (int k = 0; k < 10; ++k) {
    ComplexMatrix m = rng.matrix(4, 0.8);
    m.add_identity(1.0);
    const ComplexMatrix s = sqrtm_db(m);
    CHECK(norm_1(s * s - m) <= 1e-13 * norm_1(m));
  }
}

TEST_CASE("logm_contour agrees with the oracle") {
  Rng rng(303);
  for (std::size_t n : {2u, 4u, 8u}) {
    ComplexMatrix m = rng.matrix(n, 0.5);
    m.add_identity(2.0);
    const ContourSpec c = auto_contour(m);
    CHECK_NOTHROW(validate(c));
    const ComplexMatrix ref = oracle::logm(m);
    CHECK(oracle::diff1(logm_contour(m, c), ref) <= 1e-10 * oracle::norm1(ref));
  }
  const ComplexMatrix z = logm_contour(ComplexMatrix::diagonal({2.0, 3.0}), ContourSpec{{2.5, 0.0}, 1.2, 64});
  CHECK(std::abs(z(0, 0) - std::log(2.0)) < 1e-9);
  CHECK(std::abs(z(1, 1) - std::log(3.0)) < 1e-9);
  CHECK(norm_1(logm_contour(ComplexMatrix::identity(3), ContourSpec{{1.0, 0.0}, 0.5, 64})) < 1e-12);
  // A hand-placed circle also works when it encloses the discs.
  const ComplexMatrix d = ComplexMatrix::diagonal({1.5, 2.5});
  const ComplexMatrix l = logm_contour(d, ContourSpec{{2.0, 0.0}, 1.0, 64});
  CHECK(std::abs(l(0, 0) - std::log(1.5)) < 1e-12);
  CHECK(std::abs(l(1, 1) - std::log(2.5)) < 1e-12);
}

TEST_CASE("contour validation") {
  CHECK_ERROR_KIND(validate(ContourSpec{{-1.0, 0.0}, 0.5, 64}), ErrorKind::ContourInvalid);
  CHECK_ERROR_KIND(validate(ContourSpec{{1.0, 0.0}, 1.0, 64}), ErrorKind::ContourInvalid);
  CHECK_ERROR_KIND(validate(ContourSpec{{1.0, 0.0}, 0.0, 64}), ErrorKind::ContourInvalid);
  CHECK_ERROR_KIND(validate(ContourSpec{{1.0, 0.0}, 0.5, 0}), ErrorKind::ContourInvalid);
  // Circle does not enclose the spectrum.
  CHECK_ERROR_KIND(logm_contour(ComplexMatrix::diagonal({1.0, 5.0}), ContourSpec{{1.0, 0.0}, 0.5, 64}),
                   ErrorKind::ContourInvalid);
  CHECK_ERROR_KIND(auto_contour(-ComplexMatrix::identity(2)), ErrorKind::ContourInvalid);
}

TEST_CASE("fd_derivative on polynomial curves") {
  const ComplexMatrix m{{1.0, 2.0}, {cplx{0, 1}, -1.0}};
  // f(t) = t^3 M: f'(1) = 3M, f''(1) = 6M.
  const MatrixCurve f = [&](double t) { return m * cplx{t * t * t, 0.0}; };
  FdConfig cfg;
  cfg.h = 1e-2;
  cfg.richardson_levels = 0;
  const double err0 = norm_1(fd_derivative(f, 1.0, cfg, 1) - m * cplx{3.0, 0.0});
  CHECK(err0 == doctest::Approx(1e-4 * norm_1(m)).epsilon(1e-6));  // h^2 f'''/6 = h^2 M
  cfg.richardson_levels = 1;
  CHECK(norm_1(fd_derivative(f, 1.0, cfg, 1) - m * cplx{3.0, 0.0}) < 1e-11);
  CHECK(norm_1(fd_derivative(f, 1.0, cfg, 2) - m * cplx{6.0, 0.0}) < 1e-8);
}

TEST_CASE("fd_derivative: Richardson levels raise the order") {
  const ComplexMatrix a{{0.3, 1.0}, {-0.7, 0.2}};
  const MatrixCurve f = [&](double t) { return expm(a * cplx{t, 0.0}); };
  const ComplexMatrix exact = a * expm(a * cplx{0.4, 0.0});
  double previous = 1.0;
  for (int levels = 0; levels <= 2; ++levels) {
    FdConfig cfg;
    cfg.h = 0.05;
    cfg.richardson_levels = levels;
    const double err = norm_1(fd_derivative(f, 0.4, cfg, 1) - exact);
    CHECK(err < previous * 1e-2);
    previous = err;
  }
}

TEST_CASE("fd_derivative errors") {
  const MatrixCurve ok = [](double) { return ComplexMatrix::identity(2); };
  CHECK_ERROR_KIND(fd_derivative(ok, 0.0, FdConfig{.h = 0.0}, 1), ErrorKind::InvalidArgument);
  CHECK_ERROR_KIND(fd_derivative(ok, 0.0, FdConfig{.h = 1e-3, .richardson_levels = 4}, 1), ErrorKind::InvalidArgument);
  CHECK_ERROR_KIND(fd_derivative(ok, 0.0, FdConfig{}, 3), ErrorKind::InvalidArgument);
  const MatrixCurve bad = [](double t) {
    if (t > 0.0) return logm_iss(-ComplexMatrix::identity(2));
    return ComplexMatrix::identity(2);
  };
  CHECK_ERROR_KIND(fd_derivative(bad, 0.0, FdConfig{}, 1), ErrorKind::EvaluationFailure);
}

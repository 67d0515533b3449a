#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "opcalc/evolution.hpp"
#include "opcalc/random.hpp"
#include "oracles.hpp"

using namespace opcalc;

TEST_CASE("zero generator propagates to the identity") {
  const auto g = zero_generator(3);
  CHECK(propagate(g, 1.0, 0.0, 10).u == ComplexMatrix::identity(3));
  CHECK(propagate(g, 0.5, 0.5, 1).u == ComplexMatrix::identity(3));
}

TEST_CASE("constant generator matches the exponential oracle") {
  Rng rng(1);
  for (std::size_t n : {2u, 5u}) {
    const ComplexMatrix a = rng.matrix(n, 1.5);
    const auto g = constant_generator("c", a);
    for (Stepper st : {Stepper::RK4, Stepper::Magnus2}) {
      const EvolutionOperator u = propagate(g, 0.8, 0.1, 400, st);
      CHECK(u.steps == 400);
      CHECK(u.stepper == st);
      CHECK(u.generator_id == "c");
      const double tol = st == Stepper::RK4 ? 1e-11 : 1e-12;  // Magnus2 is exact here
      CHECK(oracle::diff1(u.u, oracle::expm(a * cplx{0.7, 0.0})) < tol);
    }
  }
}

TEST_CASE("modulated generator matches the integrated exponent") {
  // f(t) = 1 + 2t, int_s^t f = (t - s) + (t^2 - s^2).
  Rng rng(2);
  const ComplexMatrix a = rng.matrix(3, 1.0);
  const auto g = modulated_generator("m", a, [](double t) { return 1.0 + 2.0 * t; });
  const double t = 0.9, s = 0.2;
  const ComplexMatrix ref = oracle::expm(a * cplx{(t - s) + (t * t - s * s), 0.0});
  CHECK(oracle::diff1(propagate(g, t, s, 400).u, ref) < 1e-11);
}

TEST_CASE("RK4 and Magnus2 convergence orders") {
  Rng rng(3);
  const auto g = affine_generator("aff", rng.matrix(3, 1.0), rng.matrix(3, 1.0));
  const ComplexMatrix ref = propagate(g, 1.0, 0.0, 4000).u;
  const auto rate = [&](Stepper st) {
    const double e1 = norm_1(propagate(g, 1.0, 0.0, 16, st).u - ref);
    const double e2 = norm_1(propagate(g, 1.0, 0.0, 32, st).u - ref);
    return std::log2(e1 / e2);
  };
  CHECK(rate(Stepper::RK4) == doctest::Approx(4.0).epsilon(0.05));
  CHECK(rate(Stepper::Magnus2) == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("semigroup property") {
  Rng rng(4);
  const auto g = affine_generator("aff", rng.matrix(4, 1.0), rng.matrix(4, 2.0));
  CHECK(check_semigroup(g, 0.0, 0.3, 1.0, 500) < 1e-12);
  CHECK(check_semigroup(g, 0.2, 0.2, 0.6, 100) < 1e-13);
  CHECK_ERROR_KIND(check_semigroup(g, 0.5, 0.2, 0.6, 100), ErrorKind::InvalidArgument);
}

TEST_CASE("table generator interpolates linearly") {
  const ComplexMatrix a0 = ComplexMatrix::diagonal({1.0, 2.0});
  const ComplexMatrix a1 = ComplexMatrix::diagonal({3.0, -2.0});
  const auto g = table_generator("tab", {{0.0, a0}, {1.0, a1}}, 1.0);
  CHECK(oracle::diff1(g.eval(0.25), ComplexMatrix::diagonal({1.5, 1.0})) < 1e-15);
  // Diagonal: U = diag(exp(int a_jj)).
  const ComplexMatrix u = propagate(g, 1.0, 0.0, 200).u;
  CHECK(std::abs(u(0, 0) - std::exp(2.0)) < 1e-8);
  CHECK(std::abs(u(1, 1) - std::exp(0.0)) < 1e-8);
  CHECK_ERROR_KIND(table_generator("bad", {{0.5, a0}, {0.5, a1}}, 1.0), ErrorKind::InvalidArgument);
  CHECK_ERROR_KIND(table_generator("bad", {}, 1.0), ErrorKind::InvalidArgument);
}

TEST_CASE("lipschitz estimate of an affine family") {
  const ComplexMatrix a1{{0.0, 2.0}, {1.0, 0.0}};
  const auto g = affine_generator("aff", ComplexMatrix::identity(2), a1);
  CHECK(lipschitz_estimate(g) == doctest::Approx(norm_1(a1)));
}

TEST_CASE("growth bound") {
  // Skew-Hermitian generator: U unitary, norm_1(U) <= sqrt(n).
  const ComplexMatrix h{{0.0, cplx{0, 1}}, {cplx{0, 1}, 0.0}};
  const auto u = propagate(constant_generator("skew", h, 2.0), 2.0, 0.0, 400);
  CHECK(check_growth_bound(u, std::sqrt(2.0), 0.0));
  // Dissipative diagonal: norm decays like e^{-t}.
  const auto v = propagate(constant_generator("damp", ComplexMatrix::diagonal({-1.0, -3.0})), 1.0, 0.0, 200);
  CHECK(check_growth_bound(v, 1.0, -1.0));
  CHECK_FALSE(check_growth_bound(v, 1.0, -1.1));
}

TEST_CASE("propagate argument checks") {
  const auto g = zero_generator(2, 1.0);
  CHECK_ERROR_KIND(propagate(g, 0.2, 0.5, 10), ErrorKind::InvalidArgument);
  CHECK_ERROR_KIND(propagate(g, 1.5, 0.0, 10), ErrorKind::InvalidArgument);
  CHECK_ERROR_KIND(propagate(g, 1.0, 0.0, 0), ErrorKind::InvalidArgument);
  const auto blowup = constant_generator("big", ComplexMatrix::identity(2) * cplx{1e308, 0.0});
  CHECK_ERROR_KIND(propagate(blowup, 1.0, 0.0, 2), ErrorKind::StepFailure);
}

TEST_CASE("stepper names round trip") {
  CHECK(stepper_from_string(to_string(Stepper::RK4)) == Stepper::RK4);
  CHECK(stepper_from_string(to_string(Stepper::Magnus2)) == Stepper::Magnus2);
  CHECK_ERROR_KIND(stepper_from_string("euler"), ErrorKind::InvalidArgument);
}

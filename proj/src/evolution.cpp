#include "opcalc/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "opcalc/error.hpp"

namespace opcalc {

GeneratorSpec zero_generator(std::size_t dim, double horizon) {
  return {"zero", dim, horizon, [dim](double) { return ComplexMatrix::zero(dim); }};
}

GeneratorSpec constant_generator(std::string id, ComplexMatrix a, double horizon) {
  const std::size_t dim = a.dim();
  return {std::move(id), dim, horizon, [a = std::move(a)](double) { return a; }};
}

GeneratorSpec modulated_generator(std::string id, ComplexMatrix a0, std::function<double(double)> f,
                                  double horizon) {
  const std::size_t dim = a0.dim();
  return {std::move(id), dim, horizon,
          [a0 = std::move(a0), f = std::move(f)](double t) { return a0 * cplx{f(t), 0.0}; }};
}

GeneratorSpec affine_generator(std::string id, ComplexMatrix a0, ComplexMatrix a1, double horizon) {
  if (a0.dim() != a1.dim()) throw Error(ErrorKind::DimensionMismatch, "affine generator parts differ in size");
  const std::size_t dim = a0.dim();
  return {std::move(id), dim, horizon,
          [a0 = std::move(a0), a1 = std::move(a1)](double t) { return a0 + a1 * cplx{t, 0.0}; }};
}

GeneratorSpec table_generator(std::string id, std::vector<std::pair<double, ComplexMatrix>> samples,
                              double horizon) {
  if (samples.empty()) throw Error(ErrorKind::InvalidArgument, "table generator needs samples");
  const std::size_t dim = samples.front().second.dim();
  for (std::size_t k = 0; k < samples.size(); ++k) {
    if (samples[k].second.dim() != dim) {
      throw Error(ErrorKind::DimensionMismatch, "table generator samples differ in size");
    }
    if (k > 0 && !(samples[k].first > samples[k - 1].first)) {
      throw Error(ErrorKind::InvalidArgument, "table generator times must increase strictly");
    }
  }
  return {std::move(id), dim, horizon, [samples = std::move(samples)](double t) {
            if (t <= samples.front().first) return samples.front().second;
            if (t >= samples.back().first) return samples.back().second;
            const auto hi = std::upper_bound(samples.begin(), samples.end(), t,
                                             [](double v, const auto& p) { return v < p.first; });
            const auto lo = hi - 1;
            const double w = (t - lo->first) / (hi->first - lo->first);
            return lo->second * cplx{1.0 - w, 0.0} + hi->second * cplx{w, 0.0};
          }};
}

double lipschitz_estimate(const GeneratorSpec& g, int samples) {
  if (samples < 2) throw Error(ErrorKind::InvalidArgument, "need at least two samples");
  const double delta = g.horizon / (samples - 1);
  double best = 0.0;
  ComplexMatrix prev = g.eval(0.0);
  for (int k = 1; k < samples; ++k) {
    ComplexMatrix cur = g.eval(k * delta);
    best = std::max(best, norm_1(cur - prev) / delta);
    prev = std::move(cur);
  }
  return best;
}

std::string_view to_string(Stepper s) { return s == Stepper::RK4 ? "RK4" : "Magnus2"; }

Stepper stepper_from_string(std::string_view name) {
  if (name == "RK4" || name == "rk4") return Stepper::RK4;
  if (name == "Magnus2" || name == "magnus2") return Stepper::Magnus2;
  throw Error(ErrorKind::InvalidArgument, "unknown stepper '" + std::string(name) + "'");
}

EvolutionOperator propagate(const GeneratorSpec& g, double t, double s, int steps, Stepper stepper) {
  if (!(0.0 <= s && s <= t && t <= g.horizon)) {
    std::ostringstream msg;
    msg << "need 0 <= s <= t <= T, got s = " << s << ", t = " << t << ", T = " << g.horizon;
    throw Error(ErrorKind::InvalidArgument, msg.str());
  }
  if (steps < 1) throw Error(ErrorKind::InvalidArgument, "steps must be at least 1");

  EvolutionOperator out;
  out.t = t;
  out.s = s;
  out.generator_id = g.id;
  out.stepper = stepper;
  out.steps = steps;
  out.u = ComplexMatrix::identity(g.dim);
  if (t == s) return out;

  const double h = (t - s) / steps;
  const auto eval = [&](double tau) {
    ComplexMatrix a = g.eval(tau);
    if (a.dim() != g.dim) throw Error(ErrorKind::DimensionMismatch, "generator returned wrong size");
    return a;
  };

  ComplexMatrix& u = out.u;
  for (int k = 0; k < steps; ++k) {
    const double t0 = s + k * h;
    if (stepper == Stepper::RK4) {
      const ComplexMatrix a0 = eval(t0);
      const ComplexMatrix am = eval(t0 + 0.5 * h);
      const ComplexMatrix a1 = eval(t0 + h);
      const ComplexMatrix k1 = a0 * u;
      const ComplexMatrix k2 = am * (u + k1 * cplx{0.5 * h, 0.0});
      const ComplexMatrix k3 = am * (u + k2 * cplx{0.5 * h, 0.0});
      const ComplexMatrix k4 = a1 * (u + k3 * cplx{h, 0.0});
      u += (k1 + k4 + 2.0 * (k2 + k3)) * cplx{h / 6.0, 0.0};
    } else {
      u = expm(eval(t0 + 0.5 * h) * cplx{h, 0.0}) * u;
    }
    if (!u.all_finite()) {
      throw Error(ErrorKind::StepFailure, "non-finite entries after step " + std::to_string(k + 1));
    }
  }
  return out;
}

double check_semigroup(const GeneratorSpec& g, double s, double r, double t, int steps, Stepper stepper) {
  if (!(s <= r && r <= t)) throw Error(ErrorKind::InvalidArgument, "need s <= r <= t");
  if (t == s) return 0.0;
  const double density = steps / (t - s);
  const auto count = [&](double len) { return std::max(1, static_cast<int>(std::lround(density * len))); };
  const ComplexMatrix whole = propagate(g, t, s, steps, stepper).u;
  const ComplexMatrix first = propagate(g, r, s, count(r - s), stepper).u;
  const ComplexMatrix second = propagate(g, t, r, count(t - r), stepper).u;
  return norm_1(second * first - whole);
}

bool check_growth_bound(const EvolutionOperator& u, double m, double omega) {
  if (!(m > 0.0)) throw Error(ErrorKind::InvalidArgument, "growth constant M must be positive");
  return norm_1(u.u) <= m * std::exp(omega * (u.t - u.s)) * (1.0 + 1e-9);
}

}  // namespace opcalc

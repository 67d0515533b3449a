#include "opcalc/random.hpp"

namespace opcalc {

ComplexMatrix Rng::matrix(std::size_t n, double target_norm, bool complex_entries) {
  ComplexMatrix m(n);
  for (auto& z : m.data()) {
    const double re = symmetric();
    z = {re, complex_entries ? symmetric() : 0.0};
  }
  const double norm = norm_1(m);
  if (norm > 0.0) m *= target_norm / norm;
  return m;
}

}  // namespace opcalc

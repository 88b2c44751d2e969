#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "qbound/complex_matrix.hpp"

namespace qbound {

// Seeded random source. mt19937_64 output is fully specified by the
// standard and the mappings below are explicit, so identical seeds give
// identical streams on every platform. std::*_distribution is avoided on
// purpose (implementation-defined sequences).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // uniform in [0, 1)
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // uniform integer in [0, n)
  std::uint64_t integer(std::uint64_t n) { return engine_() % n; }

  // standard normal via Box-Muller
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * M_PI * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  cdouble complex_gaussian() {
    const double re = gaussian();
    const double im = gaussian();
    return cdouble(re, im);
  }

  CVector unit_vector(std::size_t dim) {
    CVector v(dim);
    for (auto& e : v) e = complex_gaussian();
    normalize(v);
    return v;
  }

  // probability vector from normalized exponentials (all entries positive)
  RVector probability_vector(std::size_t n) {
    RVector p(n);
    double total = 0.0;
    for (auto& x : p) {
      x = -std::log(1.0 - uniform());
      total += x;
    }
    for (auto& x : p) x /= total;
    return p;
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace qbound

#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "mixlag/sparse.hpp"

namespace mixlag::testutil {

inline Vector random_vector(std::size_t n, unsigned seed, double lo = -1.0,
                            double hi = 1.0) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(lo, hi);
  Vector v(n);
  for (double& x : v) x = dist(rng);
  return v;
}

inline double rel_err(double value, double reference) {
  return std::abs(value - reference) / std::max(1e-300, std::abs(reference));
}

// Observed order from three errors at resolutions h, h/2, h/4.
inline double observed_order(double e1, double e2) {
  return std::log2(e1 / e2);
}

}  // namespace mixlag::testutil

// Least-squares utilities for convergence-order studies.
#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mixlag {

struct LinearFit {
  double intercept = 0.0;
  double slope = 0.0;
};

LinearFit fit_linear(const std::vector<double>& x, const std::vector<double>& y);

class EstimationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Least-squares slope of log(error) against log(eps).  Pairs with
// non-positive errors are dropped with a warning; fewer than 3 surviving
// pairs is an estimation error.
double estimate_order(const std::vector<std::pair<double, double>>& pairs,
                      std::vector<std::string>* warnings = nullptr);

}  // namespace mixlag

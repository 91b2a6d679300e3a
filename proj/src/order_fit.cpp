#include "mixlag/order_fit.hpp"

#include <cmath>

namespace mixlag {

LinearFit fit_linear(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("fit_linear: need at least 2 matching points");
  const double n = double(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw std::invalid_argument("fit_linear: degenerate abscissae");
  LinearFit fit;
  fit.slope = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / n;
  return fit;
}

double estimate_order(const std::vector<std::pair<double, double>>& pairs,
                      std::vector<std::string>* warnings) {
  std::vector<double> lx, ly;
  for (const auto& [eps, err] : pairs) {
    if (!(err > 0.0)) {
      if (warnings)
        warnings->push_back("estimate_order: dropped non-positive error at eps=" +
                            std::to_string(eps));
      continue;
    }
    lx.push_back(std::log(eps));
    ly.push_back(std::log(err));
  }
  if (lx.size() < 3)
    throw EstimationError("estimate_order: fewer than 3 usable (eps, error) pairs");
  return fit_linear(lx, ly).slope;
}

}  // namespace mixlag

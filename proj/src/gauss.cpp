#include "chroma/gauss.hpp"

#include <cmath>
#include <algorithm>
#include <numbers>
#include <stdexcept>

namespace chroma {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); }

double gauss_alpha(double r, double c, double c_cov) {
  if (!(r > 0.0)) throw std::invalid_argument("gauss_alpha needs r > 0");
  if (!(c > 0.0) || !(c <= c_cov)) throw std::invalid_argument("gauss_alpha needs 0 < c <= C");
  const double a = -r / std::sqrt(c);
  const double ratio = c / c_cov;
  const double rho0 = std::sqrt(std::max(0.0, 1.0 - ratio * ratio));
  // 1 - rho0^2 = (c/C)^2, which avoids cancellation when c << C.
  const double second = normal_cdf(a * (1.0 + 2.0 * rho0) / ratio);
  return (normal_cdf(a) - normal_cdf(2.0 * a)) * second;
}

}  // namespace chroma

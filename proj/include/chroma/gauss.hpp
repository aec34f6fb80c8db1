#pragma once

// Gaussian rectangle constant
//   alpha_r(c, C) = (Phi(a) - Phi(2a)) * Phi( a (1 + 2 rho0) / sqrt(1 - rho0^2) ),
//   a = -r / sqrt(c),  rho0 = sqrt(1 - (c/C)^2),
// a lower bound on P(Z_1 <= mu_1 - r sqrt(n), Z_2 <= mu_2 - r sqrt(n)) for a
// bivariate normal Z whose covariance has eigenvalues in [c n, C n] (r >= 1).

namespace chroma {

/// Standard normal distribution function via erfc; relative error ~1e-15.
double normal_cdf(double x);
double normal_pdf(double x);

/// Throws std::invalid_argument unless r > 0 and 0 < c <= c_cov.
double gauss_alpha(double r, double c, double c_cov);

}  // namespace chroma

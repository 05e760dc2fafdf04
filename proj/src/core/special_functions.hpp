#pragma once

namespace crashspat::num {

inline constexpr double inv_sqrt_2pi = 0.3989422804014326779399461;
inline constexpr double sqrt_2 = 1.4142135623730950488016887;

/// Standard normal density.
double norm_pdf(double t);

/// Standard normal cumulative distribution, accurate to ~1e-15.
double norm_cdf(double t);

/// Inverse of norm_cdf on (0, 1). Throws Domain error at 0, 1, or outside.
double norm_inv_cdf(double p);

/// Two-sided p-value for a standard normal score.
double norm_two_sided_p(double z);

/// Regularized lower incomplete gamma P(a, x), a > 0, x >= 0.
double gamma_p(double a, double x);

/// Chi-square CDF with `df` degrees of freedom. Throws Domain error for
/// df <= 0 or x < 0.
double chi_square_cdf(double x, int df);

} // namespace crashspat::num

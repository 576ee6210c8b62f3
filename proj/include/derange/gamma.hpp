#pragma once

namespace derange {

// Regularized lower/upper incomplete gamma functions P(a,x), Q(a,x) = 1 - P.
// Series expansion below x < a+1, continued fraction (modified Lentz) above.
// Relative error below 1e-10 over the chi-squared use range.
double regularized_gamma_p(double a, double x);
double regularized_gamma_q(double a, double x);

// Survival function of the chi-squared distribution: Q(dof/2, x/2).
double chi_squared_sf(double x, double dof);

}  // namespace derange

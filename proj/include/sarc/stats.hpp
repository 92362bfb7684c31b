#pragma once

namespace sarc {

// Regularized lower incomplete gamma P(a, x), a > 0, x >= 0.
double regularized_gamma_p(double a, double x);

// Standard normal quantile (Acklam's rational approximation), q in (0,1).
double normal_quantile(double q);

// Chi-square quantile with `dof` degrees of freedom at probability q in (0,1).
// Wilson-Hilferty seed refined by bisection on the regularized incomplete
// gamma until the bracket is tighter than 1e-12 relative.
double chi_square_quantile(int dof, double q);

}  // namespace sarc

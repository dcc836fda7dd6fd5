#pragma once

namespace rfso::specfun {

// Modified Bessel function of the second kind, real order.
double bessel_k(double order, double x);

// Coefficient b-hat_{m,n} of the truncated I_0 series
//   I_0(x) ~= -sum_{m=0}^{n} b-hat_{m,n} (x^2/4)^m.
double bessel_i0_series_coeffs(int n, int m);

} // namespace rfso::specfun

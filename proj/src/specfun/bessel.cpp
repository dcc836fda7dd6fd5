#include "rfso/specfun/bessel.hpp"

#include <cmath>
#include <stdexcept>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_sf_bessel.h>

#include "rfso/specfun/gamma.hpp"

namespace rfso::specfun {

namespace {
const int kGslHandlerOff = [] {
    gsl_set_error_handler_off();
    return 0;
}();
} // namespace

double bessel_k(double order, double x) {
    if (!(x > 0.0)) throw domain_error("bessel_k: require x > 0");
    (void)kGslHandlerOff;
    gsl_sf_result r;
    const int status = gsl_sf_bessel_Knu_e(std::abs(order), x, &r);
    if (status == GSL_EUNDRFLW) return 0.0;
    if (status != GSL_SUCCESS) {
        throw domain_error("bessel_k: evaluation failed (overflow or range)");
    }
    return r.val;
}

double bessel_i0_series_coeffs(int n, int m) {
    if (n < 1 || m < 0 || m > n) {
        throw std::invalid_argument("bessel_i0_series_coeffs: require 0 <= m <= n, n >= 1");
    }
    // (-1)^{m+1} (n+m-1)! n^{1-2m} / (m! (n-m)! Gamma(m+1))
    const double log_abs = std::lgamma(n + m) + (1.0 - 2.0 * m) * std::log(double(n)) -
                           2.0 * std::lgamma(m + 1.0) - std::lgamma(n - m + 1.0);
    const double sign = (m % 2 == 0) ? -1.0 : 1.0;
    return sign * std::exp(log_abs);
}

} // namespace rfso::specfun

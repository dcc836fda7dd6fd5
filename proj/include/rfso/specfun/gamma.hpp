#pragma once

#include <complex>
#include <stdexcept>

namespace rfso::specfun {

using cd = std::complex<double>;

// Thrown when a gamma-family function is evaluated at a pole or outside
// its domain.
class domain_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Principal-branch log-gamma for complex argument (Lanczos).
// Throws domain_error at non-positive integers.
cd log_gamma(cd z);

// log|Gamma(x)| together with the sign of Gamma(x), real x off the poles.
struct signed_log {
    double log_abs;
    int sign;
};
signed_log log_gamma_signed(double x);

// Digamma and higher derivatives, complex argument.
cd digamma(cd z);
cd polygamma(int order, cd z);

// Fills out[k] = psi^{(k)}(z) for k = 0..kmax in one recurrence pass.
void polygamma_all(int kmax, cd z, cd* out);

// Real-axis polygamma, order >= 0, x > 0.
double polygamma(int order, double x);

} // namespace rfso::specfun

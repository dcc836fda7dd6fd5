#pragma once

#include <vector>

#include "rfso/specfun/mellin_barnes.hpp"
#include "rfso/util/random.hpp"

namespace rfso::channels {

// Double generalized-Gamma turbulence: I_a = I_x * I_y with
// I_x ~ GG(alpha1, beta1, omega1), I_y ~ GG(alpha2, beta2, omega2),
// where GG(a, b, w) = (Gamma(b) * w / b)^{1/a} for a unit-scale Gamma(b)
// variate. lambda/sigma is alpha1/alpha2 in lowest terms; y = alpha2*lambda.
struct DggTurbulenceParams {
    double alpha1 = 2.0, beta1 = 2.0, omega1 = 1.0;
    double alpha2 = 1.0, beta2 = 2.5, omega2 = 1.0;
    int lambda = 2, sigma = 1;
    double y = 2.0;

    void validate() const;
    // Fills lambda, sigma (lowest-terms rationalization of alpha1/alpha2,
    // denominators capped) and y = alpha2 * lambda.
    void rationalize(int denominator_cap = 7);

    double log_d1() const;              // log D1
    double log_d2() const;              // log D2
    std::vector<double> tau0() const;   // lambda + sigma bottom parameters
    double mean() const;                // E[I_a]
    double log_moment() const;          // E[ln I_a]
    // Negative-moment continuation E[I_a^{-slope*t}] as gamma factors for
    // the contour engine: appends terms, adds the coefficient of t to
    // log_lin_t and the t-free part to log_const.
    void mellin_terms(double slope, std::vector<specfun::GammaTerm>& out,
                      double& log_lin_t, double& log_const) const;
};

double dgg_atmospheric_pdf(const DggTurbulenceParams& p, double i_a);
double sample_dgg(const DggTurbulenceParams& p, util::Rng& rng);

// Pointing error with non-zero boresight: radial displacement Rician(b,
// sigma_s), Gaussian-beam attenuation I_p = A0 exp(-2 r^2 / w_zeq^2).
struct PointingErrorParams {
    double boresight = 0.0;      // b (m)
    double jitter = 1.0;         // sigma_s (m)
    double beam_waist = 2.5;     // w_z (m)
    double aperture_radius = 0.1; // r (m)

    void validate() const;
    double v_geom() const;
    double a0() const;     // maximal collected fraction
    double w_zeq() const;  // equivalent beam waist
    double xi() const;     // w_zeq / (2 sigma_s)
    double big_b() const { return boresight * boresight / (2.0 * jitter * jitter); }
    double kappa_b() const { return big_b() * xi() * xi(); }
    double mean() const;       // E[I_p]
    double moment(double k) const; // E[I_p^k], k > -xi^2
    double log_moment() const; // E[ln I_p]
};

double pointing_error_pdf(const PointingErrorParams& p, double i_p);
double sample_pointing(const PointingErrorParams& p, util::Rng& rng);

struct FsoLinkParams {
    DggTurbulenceParams turbulence;
    PointingErrorParams pointing;
    int rho = 2;            // demodulation order (1 coherent, 2 IM/DD)
    double mu_rho = 1.0;    // electrical SNR normalizer (linear)
    int bessel_truncation = 10;

    void validate() const;
};

// Density of the composite irradiance I = I_a * I_p (series + parameter
// derivatives of the contour integral).
double fso_combined_pdf(const FsoLinkParams& p, double i);

// CDF of gamma_FSO = mu_rho * (I / E[I])^rho.
double fso_snr_cdf(const FsoLinkParams& p, double gamma);

double fso_mean_irradiance(const FsoLinkParams& p);

double sample_fso_irradiance(const FsoLinkParams& p, util::Rng& rng);
double sample_fso_snr(const FsoLinkParams& p, util::Rng& rng);

// Contour-integral core of the irradiance CDF F_I(u): series term m uses
// d^m/ds^m at s = xi^2 of the integrand assembled here. `extra` appends
// gamma factors (used by the interference-averaged direction-1 CDF) and
// `extra_log_z` shifts the argument. Exposed for the analytics layer.
specfun::MbIntegrand fso_cdf_integrand(const FsoLinkParams& p, double log_u,
                                       const std::vector<specfun::GammaTerm>& extra = {},
                                       double extra_log_z = 0.0);
// Prefactor and series evaluation shared by fso_snr_cdf and analytics:
// -xi^2 D1 e^{-B} / y^2 * sum_m bhat_m kappa_b^m d^m/ds^m [integral].
double fso_cdf_series(const FsoLinkParams& p,
                      const specfun::MbIntegrand& integrand,
                      double extra_log_prefactor = 0.0,
                      bool asymptotic = false, int k_max = 1);

} // namespace rfso::channels

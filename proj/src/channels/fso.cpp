#include "rfso/channels/fso.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

#include <gsl/gsl_sf_bessel.h>

#include "rfso/specfun/bessel.hpp"
#include "rfso/specfun/gamma.hpp"
#include "rfso/specfun/meijer_g.hpp"

namespace rfso::channels {

namespace {
constexpr double kTwoPi = 6.283185307179586476925287;

double real_log_gamma(double x) {
    return specfun::log_gamma(specfun::cd(x, 0.0)).real();
}
} // namespace

void DggTurbulenceParams::validate() const {
    if (!(alpha1 > 0.0 && beta1 > 0.0 && omega1 > 0.0 && alpha2 > 0.0 &&
          beta2 > 0.0 && omega2 > 0.0)) {
        throw std::invalid_argument("DggTurbulenceParams: shapes/scales must be > 0");
    }
    if (lambda < 1 || sigma < 1) {
        throw std::invalid_argument("DggTurbulenceParams: lambda, sigma must be positive integers");
    }
    const double ratio = alpha1 / alpha2;
    if (std::abs(static_cast<double>(lambda) / sigma - ratio) > 1e-9 * ratio) {
        throw std::invalid_argument("DggTurbulenceParams: lambda/sigma != alpha1/alpha2");
    }
    if (std::abs(y - alpha2 * lambda) > 1e-9 * std::abs(y)) {
        throw std::invalid_argument("DggTurbulenceParams: y != alpha2 * lambda");
    }
}

void DggTurbulenceParams::rationalize(int denominator_cap) {
    const double ratio = alpha1 / alpha2;
    for (int q = 1; q <= denominator_cap; ++q) {
        const double p = ratio * q;
        const double r = std::round(p);
        if (r >= 1.0 && std::abs(p - r) <= 1e-9 * std::max(1.0, p)) {
            int lam = static_cast<int>(r), sig = q;
            const int g = std::gcd(lam, sig);
            lambda = lam / g;
            sigma = sig / g;
            y = alpha2 * lambda;
            return;
        }
    }
    throw std::invalid_argument(
        "DggTurbulenceParams: alpha1/alpha2 is not a small rational; "
        "cannot form integer lambda/sigma");
}

double DggTurbulenceParams::log_d1() const {
    return std::log(y) + (beta1 - 0.5) * std::log(double(sigma)) +
           (beta2 - 0.5) * std::log(double(lambda)) +
           (1.0 - (sigma + lambda) / 2.0) * std::log(kTwoPi) -
           real_log_gamma(beta1) - real_log_gamma(beta2);
}

double DggTurbulenceParams::log_d2() const {
    return lambda * std::log(double(lambda)) + sigma * std::log(double(sigma)) +
           sigma * std::log(omega1) + lambda * std::log(omega2) -
           sigma * std::log(beta1) - lambda * std::log(beta2);
}

std::vector<double> DggTurbulenceParams::tau0() const {
    std::vector<double> t;
    t.reserve(lambda + sigma);
    for (int j = 0; j < sigma; ++j) t.push_back((beta1 + j) / sigma);
    for (int j = 0; j < lambda; ++j) t.push_back((beta2 + j) / lambda);
    return t;
}

double DggTurbulenceParams::mean() const {
    auto f = [&](double a, double b, double w) {
        return std::pow(w / b, 1.0 / a) *
               std::exp(real_log_gamma(b + 1.0 / a) - real_log_gamma(b));
    };
    return f(alpha1, beta1, omega1) * f(alpha2, beta2, omega2);
}

double DggTurbulenceParams::log_moment() const {
    return (specfun::polygamma(0, beta1) + std::log(omega1 / beta1)) / alpha1 +
           (specfun::polygamma(0, beta2) + std::log(omega2 / beta2)) / alpha2;
}

void DggTurbulenceParams::mellin_terms(double slope,
                                       std::vector<specfun::GammaTerm>& out,
                                       double& log_lin_t, double& log_const) const {
    // E[I_a^{-slope t}] = prod_i Gamma(b_i - slope t / a_i) / Gamma(b_i)
    //                     * (w_i / b_i)^{-slope t / a_i}
    out.push_back({beta1, -slope / alpha1, 0.0, +1});
    out.push_back({beta2, -slope / alpha2, 0.0, +1});
    log_lin_t += -slope * (std::log(omega1 / beta1) / alpha1 +
                           std::log(omega2 / beta2) / alpha2);
    log_const += -real_log_gamma(beta1) - real_log_gamma(beta2);
}

double dgg_atmospheric_pdf(const DggTurbulenceParams& p, double i_a) {
    p.validate();
    if (!(i_a > 0.0)) throw std::invalid_argument("dgg_atmospheric_pdf: require i_a > 0");
    specfun::MbIntegrand f;
    for (double t0 : p.tau0()) f.terms.push_back({t0, -1.0, 0.0, +1});
    f.log_z = p.y * std::log(i_a) - p.log_d2();
    const auto r = specfun::mb_evaluate(f, 0.0, 0, {});
    return std::exp(p.log_d1() - std::log(i_a)) * r.value;
}

double sample_dgg(const DggTurbulenceParams& p, util::Rng& rng) {
    const double x = std::pow(rng.gamma(p.beta1) * p.omega1 / p.beta1, 1.0 / p.alpha1);
    const double yv = std::pow(rng.gamma(p.beta2) * p.omega2 / p.beta2, 1.0 / p.alpha2);
    return x * yv;
}

void PointingErrorParams::validate() const {
    if (!(jitter > 0.0 && beam_waist > 0.0 && aperture_radius > 0.0) ||
        boresight < 0.0) {
        throw std::invalid_argument("PointingErrorParams: invalid geometry");
    }
}

double PointingErrorParams::v_geom() const {
    return std::sqrt(3.141592653589793238462643) * aperture_radius /
           (2.0 * beam_waist);
}

double PointingErrorParams::a0() const {
    const double e = std::erf(v_geom());
    return e * e;
}

double PointingErrorParams::w_zeq() const {
    const double v = v_geom();
    const double num = std::sqrt(3.141592653589793238462643) * std::erf(v);
    return beam_waist * std::sqrt(num / (2.0 * v * std::exp(-v * v)));
}

double PointingErrorParams::xi() const { return w_zeq() / (2.0 * jitter); }

double PointingErrorParams::moment(double k) const {
    const double x2 = xi() * xi();
    if (!(x2 + k > 0.0)) throw std::invalid_argument("PointingErrorParams::moment: k <= -xi^2");
    return std::pow(a0(), k) * x2 / (x2 + k) * std::exp(-k * big_b() / (x2 + k));
}

double PointingErrorParams::mean() const { return moment(1.0); }

double PointingErrorParams::log_moment() const {
    return std::log(a0()) - (1.0 + big_b()) / (xi() * xi());
}

double pointing_error_pdf(const PointingErrorParams& p, double i_p) {
    p.validate();
    const double A0 = p.a0();
    if (!(i_p > 0.0) || i_p >= A0) return 0.0;
    const double x2 = p.xi() * p.xi();
    const double r = p.w_zeq() * std::sqrt(0.5 * std::log(A0 / i_p));
    const double arg = p.boresight * r / (p.jitter * p.jitter);
    // log I0(arg) without overflow
    const double log_i0 = std::log(gsl_sf_bessel_I0_scaled(arg)) + arg;
    return std::exp(std::log(x2) - p.big_b() + (x2 - 1.0) * std::log(i_p) -
                    x2 * std::log(A0) + log_i0);
}

double sample_pointing(const PointingErrorParams& p, util::Rng& rng) {
    const double dx = p.boresight + p.jitter * rng.normal();
    const double dy = p.jitter * rng.normal();
    const double r2 = dx * dx + dy * dy;
    const double weq = p.w_zeq();
    return p.a0() * std::exp(-2.0 * r2 / (weq * weq));
}

void FsoLinkParams::validate() const {
    turbulence.validate();
    pointing.validate();
    if (rho != 1 && rho != 2) throw std::invalid_argument("FsoLinkParams: rho must be 1 or 2");
    if (!(mu_rho > 0.0)) throw std::invalid_argument("FsoLinkParams: mu_rho must be > 0");
    if (bessel_truncation < 1 || bessel_truncation > specfun::kMaxDerivOrder) {
        throw std::invalid_argument("FsoLinkParams: bessel_truncation out of range");
    }
}

double fso_mean_irradiance(const FsoLinkParams& p) {
    p.validate();
    return p.turbulence.mean() * p.pointing.mean();
}

double sample_fso_irradiance(const FsoLinkParams& p, util::Rng& rng) {
    return sample_dgg(p.turbulence, rng) * sample_pointing(p.pointing, rng);
}

double sample_fso_snr(const FsoLinkParams& p, util::Rng& rng) {
    const double i = sample_fso_irradiance(p, rng);
    return p.mu_rho * std::pow(i / fso_mean_irradiance(p), double(p.rho));
}

namespace {
std::atomic<long> g_truncation_warnings{0};
} // namespace

double fso_cdf_series(const FsoLinkParams& p,
                      const specfun::MbIntegrand& integrand,
                      double extra_log_prefactor, bool asymptotic, int k_max) {
    const auto& pt = p.pointing;
    const double x2 = pt.xi() * pt.xi();
    const double kb = pt.kappa_b();
    const int n = p.bessel_truncation;

    const int top = kb == 0.0 ? 0 : n;
    std::vector<specfun::MbResult> derivs;
    if (!asymptotic) derivs = specfun::mb_evaluate_multi(integrand, x2, top, {});

    double total = 0.0, tail = 0.0;
    double kb_pow = 1.0;
    for (int m = 0; m <= n; ++m) {
        const double bm = specfun::bessel_i0_series_coeffs(n, m);
        const double dm = asymptotic
            ? specfun::mb_leading_residues(integrand, x2, m, k_max)
            : derivs[m].value;
        const double term = bm * kb_pow * dm;
        total += term;
        if (m >= n - 1) tail += std::abs(term);
        kb_pow *= kb;
        if (kb == 0.0) break; // boresight-free: only m = 0 contributes
    }
    if (kb != 0.0 && tail > 1e-4 * std::abs(total)) {
        if (g_truncation_warnings.fetch_add(1) == 0) {
            std::fprintf(stderr,
                         "warning: I0-series truncation drift %.2e at n=%d; "
                         "consider a larger truncation order\n",
                         tail / std::abs(total), n);
        }
    }
    const double pref = -x2 * std::exp(p.turbulence.log_d1() - pt.big_b() +
                                       extra_log_prefactor) /
                        (p.turbulence.y * p.turbulence.y);
    return pref * total;
}

specfun::MbIntegrand fso_cdf_integrand(const FsoLinkParams& p, double log_u,
                                       const std::vector<specfun::GammaTerm>& extra,
                                       double extra_log_z) {
    const auto& tb = p.turbulence;
    const double inv_y = 1.0 / tb.y;
    specfun::MbIntegrand f;
    for (double t0 : tb.tau0()) f.terms.push_back({t0, -1.0, 0.0, +1});
    f.terms.push_back({0.0, -1.0, inv_y, +1});  // Gamma(s/y - t)
    f.terms.push_back({0.0, 1.0, 0.0, +1});     // Gamma(t)
    f.terms.push_back({1.0, -1.0, inv_y, -1});  // 1/Gamma(1 + s/y - t)
    f.terms.push_back({1.0, 1.0, 0.0, -1});     // 1/Gamma(1 + t)
    for (const auto& t : extra) f.terms.push_back(t);
    f.log_z = tb.y * (log_u - std::log(p.pointing.a0())) - tb.log_d2() +
              extra_log_z;
    return f;
}

double fso_snr_cdf(const FsoLinkParams& p, double gamma) {
    p.validate();
    if (gamma < 0.0) throw std::invalid_argument("fso_snr_cdf: gamma < 0");
    if (gamma == 0.0) return 0.0;
    const double u = fso_mean_irradiance(p) *
                     std::pow(gamma / p.mu_rho, 1.0 / p.rho);
    const double v = fso_cdf_series(p, fso_cdf_integrand(p, std::log(u)));
    if (v < -1e-6 || v > 1.0 + 1e-6) {
        throw specfun::numerics_error("fso_snr_cdf: result outside [0,1]", v);
    }
    return std::min(1.0, std::max(0.0, v));
}

double fso_combined_pdf(const FsoLinkParams& p, double i) {
    p.validate();
    if (!(i > 0.0)) throw std::invalid_argument("fso_combined_pdf: require i > 0");
    const auto& tb = p.turbulence;
    const auto& pt = p.pointing;
    const double inv_y = 1.0 / tb.y;

    specfun::MbIntegrand f;
    for (double t0 : tb.tau0()) f.terms.push_back({t0, -1.0, 0.0, +1});
    f.terms.push_back({0.0, -1.0, inv_y, +1});  // Gamma(s/y - t)
    f.terms.push_back({1.0, -1.0, inv_y, -1});  // 1/Gamma(1 + s/y - t)
    f.log_z = tb.y * (std::log(i) - std::log(pt.a0())) - tb.log_d2();

    const double x2 = pt.xi() * pt.xi();
    const double kb = pt.kappa_b();
    const int n = p.bessel_truncation;
    const int top = kb == 0.0 ? 0 : n;
    const auto derivs = specfun::mb_evaluate_multi(f, x2, top, {});
    double total = 0.0, kb_pow = 1.0;
    for (int m = 0; m <= top; ++m) {
        total += specfun::bessel_i0_series_coeffs(n, m) * kb_pow *
                 derivs[m].value;
        kb_pow *= kb;
    }
    const double pref =
        -x2 * std::exp(tb.log_d1() - pt.big_b()) / (tb.y * i);
    return pref * total;
}

} // namespace rfso::channels

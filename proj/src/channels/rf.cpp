#include "rfso/channels/rf.hpp"

#include <cmath>
#include <stdexcept>

#include "rfso/specfun/bessel.hpp"
#include "rfso/specfun/gamma.hpp"

namespace rfso::channels {

void RfLinkParams::validate() const {
    if (!(a > 0.0) || !(v > -1.0) || !(mean_snr > 0.0)) {
        throw std::invalid_argument("RfLinkParams: require a > 0, v > -1, mean_snr > 0");
    }
}

double rf_pdf(const RfLinkParams& p, double gamma) {
    p.validate();
    if (gamma < 0.0) throw std::invalid_argument("rf_pdf: gamma < 0");
    if (gamma == 0.0) return p.v > 0.0 ? 0.0 : INFINITY;
    // f(g) = 2 / (Gamma(v+1) A2) * (g/A2)^{v/2} K_v(2 sqrt(g/A2))
    const double w = gamma / p.a2();
    const double lg = specfun::log_gamma(specfun::cd(p.v + 1.0, 0.0)).real();
    return 2.0 / p.a2() * std::exp(0.5 * p.v * std::log(w) - lg) *
           specfun::bessel_k(p.v, 2.0 * std::sqrt(w));
}

double rf_cdf_complement(const RfLinkParams& p, double gamma) {
    p.validate();
    if (gamma < 0.0) throw std::invalid_argument("rf_cdf: gamma < 0");
    if (gamma == 0.0) return 1.0;
    // 1 - F = 2 / Gamma(v+1) * (g/A2)^{(v+1)/2} K_{v+1}(2 sqrt(g/A2))
    const double w = gamma / p.a2();
    const double lg = specfun::log_gamma(specfun::cd(p.v + 1.0, 0.0)).real();
    const double k = specfun::bessel_k(p.v + 1.0, 2.0 * std::sqrt(w));
    if (k == 0.0) return 0.0;
    const double c = std::exp(0.5 * (p.v + 1.0) * std::log(w) - lg + std::log(2.0));
    return std::min(1.0, c * k);
}

double rf_cdf(const RfLinkParams& p, double gamma) {
    return 1.0 - rf_cdf_complement(p, gamma);
}

double sample_rf(const RfLinkParams& p, util::Rng& rng) {
    return p.a2() * rng.gamma(p.v + 1.0) * rng.exponential();
}

void InterferenceParams::validate() const {
    if (count < 0 || !(m >= 0.5) || !(mean_inr > 0.0)) {
        throw std::invalid_argument(
            "InterferenceParams: require count >= 0, m >= 0.5, mean_inr > 0");
    }
}

double interference_pdf(const InterferenceParams& p, double x) {
    p.validate();
    if (p.count == 0) {
        throw std::invalid_argument(
            "interference_pdf: degenerate count = 0 (no density)");
    }
    if (x < 0.0) throw std::invalid_argument("interference_pdf: x < 0");
    const double k = p.shape(), th = p.scale();
    if (x == 0.0) return k > 1.0 ? 0.0 : (k == 1.0 ? 1.0 / th : INFINITY);
    const double lg = specfun::log_gamma(specfun::cd(k, 0.0)).real();
    return std::exp((k - 1.0) * std::log(x) - x / th - lg - k * std::log(th));
}

double sample_interference(const InterferenceParams& p, util::Rng& rng) {
    p.validate();
    if (p.count == 0) return 0.0;
    return p.scale() * rng.gamma(p.shape());
}

} // namespace rfso::channels

#include "rfso/analytics/outage.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>

#include "rfso/specfun/bessel.hpp"
#include "rfso/specfun/gamma.hpp"
#include "rfso/specfun/mellin_barnes.hpp"

namespace rfso::analytics {

namespace {

double real_log_gamma(double x) {
    return specfun::log_gamma(specfun::cd(x, 0.0)).real();
}

double clamp_probability(double v, const char* where) {
    if (v < -1e-4 || v > 1.0 + 1e-4) {
        throw specfun::numerics_error(std::string(where) +
                                          ": probability residue too large",
                                      v);
    }
    return std::min(1.0, std::max(0.0, v));
}

// Direction-1 contour computation shared by the exact CDF and its high-SNR
// residue expansion. The SINR ceiling of the FSO direction is the Rx
// image-rejection ratio.
double dir1_series(const system::ScenarioParams& s, double gamma,
                   const Perturbation& mut, bool asymptotic, int k_max) {
    const auto rx = system::iqi_coefficients(s.iqi, system::IqiSide::kRx);
    if (!rx.ideal() && gamma >= rx.irr) return 1.0;
    if (s.interference.count == 0) return 0.0;
    if (gamma == 0.0) return 0.0;

    const auto& fso = s.fso;
    const double c1 = rx.ideal()
                          ? gamma
                          : (rx.irr + 1.0) * gamma / (rx.irr - gamma);
    const double ai = s.interference.shape() + mut.tau5_shift;
    const double theta = s.interference.scale();
    const double y = fso.turbulence.y;

    const double log_u = std::log(channels::fso_mean_irradiance(fso)) +
                         (std::log(c1) + std::log(theta) - std::log(fso.mu_rho)) /
                             fso.rho;
    std::vector<specfun::GammaTerm> extra{{ai, y / fso.rho, 0.0, +1}};
    auto f = channels::fso_cdf_integrand(fso, log_u, extra,
                                         std::log(mut.d4_scale));

    const auto& pt = fso.pointing;
    const double x2 = pt.xi() * pt.xi();
    const double kb = pt.kappa_b();
    const int n = fso.bessel_truncation;
    const int top = kb == 0.0 ? 0 : n;
    std::vector<specfun::MbResult> derivs;
    if (!asymptotic) derivs = specfun::mb_evaluate_multi(f, x2, top, {});
    double total = 0.0, kb_pow = 1.0;
    for (int m = 0; m <= top; ++m) {
        const double bm =
            mut.bmn_scale * specfun::bessel_i0_series_coeffs(n, m);
        const double dm =
            asymptotic ? specfun::mb_leading_residues(f, x2, m, k_max)
                       : derivs[m].value;
        total += bm * kb_pow * dm;
        kb_pow *= kb;
    }
    const double pref = -x2 * std::exp(fso.turbulence.log_d1() - pt.big_b() -
                                       real_log_gamma(ai)) /
                        (y * y);
    return pref * total;
}

// Direction-2 complement 1 - F2 via the three-gamma contour integral; the
// ceiling is the Tx image-rejection ratio.
double dir2_complement(const system::ScenarioParams& s, double gamma,
                       const Perturbation& mut, bool asymptotic, int k_max) {
    const auto tx = system::iqi_coefficients(s.iqi, system::IqiSide::kTx);
    if (!tx.ideal() && gamma >= tx.irr) return 0.0;
    if (s.interference.count == 0) return 1.0;
    if (gamma == 0.0) return 1.0;

    const double k1sq = tx.signal_gain();
    const double c2 = gamma / (k1sq * (tx.ideal() ? 1.0 : 1.0 - gamma / tx.irr));
    const double ai = s.interference.shape() + mut.tau5_shift;
    const double theta = s.interference.scale();
    const double vv = s.rf.v;
    const double w2 = c2 * theta / s.rf.a2() * mut.d4_scale;

    specfun::MbIntegrand f;
    f.terms.push_back({(vv + 1.0) / 2.0, -1.0, 0.0, +1});
    f.terms.push_back({-(vv + 1.0) / 2.0, -1.0, 0.0, +1});
    f.terms.push_back({(vv + 1.0) / 2.0 + ai, 1.0, 0.0, +1});
    f.log_z = std::log(w2);
    const double core =
        asymptotic ? specfun::mb_leading_residues(f, 0.0, 0, k_max)
                   : specfun::mb_evaluate(f, 0.0, 0, {}).value;
    return std::exp(0.5 * (vv + 1.0) * std::log(w2) -
                    real_log_gamma(vv + 1.0) - real_log_gamma(ai)) *
           core;
}

} // namespace

double cdf_dir1(const system::ScenarioParams& s, double gamma,
                const Perturbation& mut) {
    s.validate();
    if (gamma < 0.0) throw std::invalid_argument("cdf_dir1: gamma < 0");
    return clamp_probability(dir1_series(s, gamma, mut, false, 0), "cdf_dir1");
}

double cdf_dir2(const system::ScenarioParams& s, double gamma,
                const Perturbation& mut) {
    s.validate();
    if (gamma < 0.0) throw std::invalid_argument("cdf_dir2: gamma < 0");
    return clamp_probability(1.0 - dir2_complement(s, gamma, mut, false, 0),
                             "cdf_dir2");
}

OutageResult outage_exact(const system::ScenarioParams& s,
                          const Perturbation& mut) {
    s.validate();
    OutageResult r;
    r.f1 = cdf_dir1(s, s.threshold, mut);
    r.f2 = cdf_dir2(s, s.threshold, mut);
    r.exact = 1.0 - (1.0 - r.f1) * (1.0 - r.f2);
    try {
        r.asymptotic = outage_asymptotic(s);
    } catch (const std::exception&) {
        r.asymptotic = std::numeric_limits<double>::quiet_NaN();
    }
    return r;
}

double outage_asymptotic(const system::ScenarioParams& s, double floor_db) {
    s.validate();
    const double floor_lin = std::pow(10.0, floor_db / 10.0);
    if (s.rf.mean_snr < floor_lin && s.fso.mu_rho < floor_lin) {
        static bool warned = false;
        if (!warned) {
            warned = true;
            std::fprintf(stderr,
                         "note: outage_asymptotic called below the %g dB "
                         "high-SNR floor; expect a large gap\n",
                         floor_db);
        }
    }
    const double f1 = dir1_series(s, s.threshold, {}, true, 1);
    const double f2 = 1.0 - dir2_complement(s, s.threshold, {}, true, 1);
    return std::min(1.0, std::max(0.0, f1 + f2));
}

} // namespace rfso::analytics

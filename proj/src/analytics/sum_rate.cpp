#include "rfso/analytics/sum_rate.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "rfso/specfun/bessel.hpp"
#include "rfso/specfun/gamma.hpp"
#include "rfso/specfun/mellin_barnes.hpp"

namespace rfso::analytics {

namespace {

double real_log_gamma(double x) {
    return specfun::log_gamma(specfun::cd(x, 0.0)).real();
}

// Mellin kernel of ln(1 + x): Gamma(t)^2 Gamma(1-t) / Gamma(1+t), analytic
// for Re t in (-1, 0).
void push_log_kernel(specfun::MbIntegrand& f) {
    f.terms.push_back({0.0, 1.0, 0.0, +1});
    f.terms.push_back({0.0, 1.0, 0.0, +1});
    f.terms.push_back({1.0, -1.0, 0.0, +1});
    f.terms.push_back({1.0, 1.0, 0.0, -1});
}

specfun::ContourConfig rate_contour(double ai) {
    specfun::ContourConfig cfg;
    cfg.strip_lo = std::max(-1.0, -ai) + 1e-9;
    cfg.strip_hi = -1e-9;
    return cfg;
}

// E[ln(1 + c * gamma_FSO / gamma_I)] (c = 0 yields 0).
double t_fso(const system::ScenarioParams& s, double c,
             const Perturbation& mut) {
    if (c == 0.0) return 0.0;
    const auto& fso = s.fso;
    const double ai = s.interference.shape() + mut.tau5_shift;
    const double theta = s.interference.scale();
    const double rho = fso.rho;

    specfun::MbIntegrand f;
    double lin = -std::log(c), cst = 0.0;
    push_log_kernel(f);
    // gamma_FSO = mu_rho (I / E[I])^rho
    lin += -std::log(fso.mu_rho) + rho * std::log(channels::fso_mean_irradiance(fso));
    fso.turbulence.mellin_terms(rho, f.terms, lin, cst);
    // pointing factor: -xi^2 e^{-B} sum_m ... Gamma(s - rho t)/Gamma(1+s - rho t) A0^{-rho t}
    f.terms.push_back({0.0, -rho, 1.0, +1});
    f.terms.push_back({1.0, -rho, 1.0, -1});
    lin += -rho * std::log(fso.pointing.a0());
    // interference: E[gamma_I^t] = Gamma(ai + t)/Gamma(ai) theta^t
    f.terms.push_back({ai, 1.0, 0.0, +1});
    lin += std::log(theta);
    cst += -real_log_gamma(ai);
    lin += std::log(mut.d4_scale);
    f.log_z = lin;

    const auto& pt = fso.pointing;
    const double x2 = pt.xi() * pt.xi();
    const double kb = pt.kappa_b();
    const int n = fso.bessel_truncation;
    const auto cfg = rate_contour(ai);
    const int top = kb == 0.0 ? 0 : n;
    const auto derivs = specfun::mb_evaluate_multi(f, x2, top, cfg);
    double total = 0.0, kb_pow = 1.0;
    for (int m = 0; m <= top; ++m) {
        const double bm = mut.bmn_scale * specfun::bessel_i0_series_coeffs(n, m);
        total += bm * kb_pow * derivs[m].value;
        kb_pow *= kb;
    }
    return -x2 * std::exp(cst - pt.big_b()) * total;
}

// E[ln(1 + c * gamma_RF |K1t|^2 / gamma_I)].
double t_rf(const system::ScenarioParams& s, double c, double k1_t_sq,
            const Perturbation& mut) {
    if (c == 0.0) return 0.0;
    const double ai = s.interference.shape() + mut.tau5_shift;
    const double theta = s.interference.scale();

    specfun::MbIntegrand f;
    push_log_kernel(f);
    // E[gamma_RF^{-t}] = A2^{-t} Gamma(1-t) Gamma(1+v-t) / Gamma(1+v)
    f.terms.push_back({1.0, -1.0, 0.0, +1});
    f.terms.push_back({1.0 + s.rf.v, -1.0, 0.0, +1});
    f.terms.push_back({ai, 1.0, 0.0, +1});
    f.log_z = -std::log(c) - std::log(k1_t_sq * s.rf.a2()) + std::log(theta) +
              std::log(mut.d4_scale);
    const auto r = specfun::mb_evaluate(f, 0.0, 0, rate_contour(ai));
    return std::exp(-real_log_gamma(1.0 + s.rf.v) - real_log_gamma(ai)) *
           r.value;
}

} // namespace

AsrResult asr_exact(const system::ScenarioParams& s, const Perturbation& mut) {
    s.validate();
    const auto tx = system::iqi_coefficients(s.iqi, system::IqiSide::kTx);
    const auto rx = system::iqi_coefficients(s.iqi, system::IqiSide::kRx);
    const double inv_2ln2 = 0.5 / std::log(2.0);

    AsrResult out;
    if (s.interference.count == 0) {
        // Interference-free SINRs sit exactly at the IRR ceilings.
        if (tx.ideal() || rx.ideal()) {
            throw std::invalid_argument(
                "asr_exact: unbounded rate (no interference, ideal front-end)");
        }
        out.r1 = inv_2ln2 * std::log1p(rx.irr);
        out.r2 = inv_2ln2 * std::log1p(tx.irr);
        out.exact = out.r1 + out.r2;
        out.asymptotic = out.exact;
        return out;
    }
    const double c_lo1 = rx.ideal() ? 0.0 : 1.0 / (1.0 + rx.irr);
    out.r1 = inv_2ln2 * (t_fso(s, 1.0, mut) - t_fso(s, c_lo1, mut));
    const double k1sq = tx.signal_gain();
    const double c_hi2 = tx.ideal() ? 1.0 : (1.0 + tx.irr) / tx.irr;
    const double c_lo2 = tx.ideal() ? 0.0 : 1.0 / tx.irr;
    out.r2 = inv_2ln2 * (t_rf(s, c_hi2, k1sq, mut) - t_rf(s, c_lo2, k1sq, mut));
    out.exact = out.r1 + out.r2;
    try {
        out.asymptotic = asr_asymptotic(s);
    } catch (const std::exception&) {
        out.asymptotic = std::numeric_limits<double>::quiet_NaN();
    }
    if (out.r1 < -1e-9 || out.r2 < -1e-9) {
        throw specfun::numerics_error("asr_exact: negative rate component");
    }
    out.r1 = std::max(0.0, out.r1);
    out.r2 = std::max(0.0, out.r2);
    return out;
}

double asr_asymptotic(const system::ScenarioParams& s, double floor_db) {
    s.validate();
    const double floor_lin = std::pow(10.0, floor_db / 10.0);
    if (s.rf.mean_snr < floor_lin && s.fso.mu_rho < floor_lin) {
        static bool warned = false;
        if (!warned) {
            warned = true;
            std::fprintf(stderr,
                         "note: asr_asymptotic called below the %g dB "
                         "high-SNR floor; expect a large gap\n",
                         floor_db);
        }
    }
    const auto tx = system::iqi_coefficients(s.iqi, system::IqiSide::kTx);
    const auto rx = system::iqi_coefficients(s.iqi, system::IqiSide::kRx);
    const double inv_2ln2 = 0.5 / std::log(2.0);
    const double ai = s.interference.shape();
    const double log_gi = s.interference.count > 0
                              ? specfun::polygamma(0, ai) +
                                    std::log(s.interference.scale())
                              : 0.0;

    double r1, r2;
    if (rx.ideal()) {
        // E[ln w], w = gamma_FSO / gamma_I
        const double log_i = s.fso.turbulence.log_moment() +
                             s.fso.pointing.log_moment();
        r1 = inv_2ln2 *
             (std::log(s.fso.mu_rho) +
              s.fso.rho * (log_i - std::log(channels::fso_mean_irradiance(s.fso))) -
              log_gi);
    } else {
        r1 = inv_2ln2 * std::log1p(rx.irr);
    }
    if (tx.ideal()) {
        const double log_u = std::log(s.rf.a2()) +
                             specfun::polygamma(0, 1.0) +
                             specfun::polygamma(0, 1.0 + s.rf.v) - log_gi;
        r2 = inv_2ln2 * log_u;
    } else {
        r2 = inv_2ln2 * std::log1p(tx.irr);
    }
    return std::max(0.0, r1) + std::max(0.0, r2);
}

} // namespace rfso::analytics

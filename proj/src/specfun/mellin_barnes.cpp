#include "rfso/specfun/mellin_barnes.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

#include "rfso/specfun/gamma.hpp"

namespace rfso::specfun {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kInf = std::numeric_limits<double>::infinity();

double binom(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r *= static_cast<double>(n - k + i) / i;
    return r;
}

// Real-axis log-modulus of the integrand (saddle landscape).
double log_mod_on_axis(const MbIntegrand& f, double s, double g) {
    double v = g * f.log_z;
    for (const auto& T : f.terms) {
        const cd z(T.c + T.d * g + T.e * s, 0.0);
        if (z.real() <= 0.0 && z.real() == std::floor(z.real())) return kInf;
        v += T.sign * log_gamma(z).real();
    }
    return v;
}

double pick_abscissa(const MbIntegrand& f, double s, const ContourConfig& cfg, Strip strip) {
    if (cfg.shift_strategy == ShiftStrategy::kMidpoint &&
        std::isfinite(strip.lo) && std::isfinite(strip.hi)) {
        return 0.5 * (strip.lo + strip.hi);
    }
    auto fn = [&](double g) { return log_mod_on_axis(f, s, g); };

    // Bracket a minimum, expanding geometrically into unbounded directions.
    double a, b;
    if (std::isfinite(strip.lo) && std::isfinite(strip.hi)) {
        const double w = strip.hi - strip.lo;
        a = strip.lo + 1e-9 * w;
        b = strip.hi - 1e-9 * w;
    } else {
        double mid = 0.0;
        if (std::isfinite(strip.lo)) mid = strip.lo + 1.0;
        if (std::isfinite(strip.hi)) mid = strip.hi - 1.0;
        a = b = mid;
        double step = 1.0;
        while ((!std::isfinite(strip.lo) || a - step > strip.lo) && a > -1e6 &&
               fn(a - step) < fn(a)) {
            a -= step;
            step *= 2.0;
        }
        step = 1.0;
        while ((!std::isfinite(strip.hi) || b + step < strip.hi) && b < 1e6 &&
               fn(b + step) < fn(b)) {
            b += step;
            step *= 2.0;
        }
        a -= 0.5;
        b += 0.5;
        if (std::isfinite(strip.lo)) a = std::max(a, strip.lo + 1e-12);
        if (std::isfinite(strip.hi)) b = std::min(b, strip.hi - 1e-12);
    }

    const double gr = 0.6180339887498949;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = fn(x1), f2 = fn(x2);
    for (int it = 0; it < 160 && b - a > 1e-9 * (1.0 + std::abs(a) + std::abs(b)); ++it) {
        if (f1 > f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = fn(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = fn(x1);
        }
    }
    return 0.5 * (a + b);
}

struct NodeEval {
    cd log_f;              // log of the bare integrand
    std::vector<cd> bell;  // (d^m/ds^m integrand) / integrand, m = 0..order
};

NodeEval eval_node(const MbIntegrand& f, double s, int order, double g0, double tau) {
    const cd t(g0, tau);
    cd L = t * f.log_z;
    for (const auto& T : f.terms) {
        L += static_cast<double>(T.sign) * log_gamma(T.c + T.d * t + T.e * s);
    }
    NodeEval out{L, std::vector<cd>(order + 1, cd(0.0, 0.0))};
    out.bell[0] = cd(1.0, 0.0);
    if (order == 0) return out;

    // L^{(k)}(s) = sum_i sign_i e_i^k psi^{(k-1)}(c_i + d_i t + e_i s)
    std::vector<cd> Ld(order + 1, cd(0.0, 0.0));
    std::vector<cd> psi(order);
    for (const auto& T : f.terms) {
        if (T.e == 0.0) continue;
        const cd z = T.c + T.d * t + T.e * s;
        polygamma_all(order - 1, z, psi.data());
        double ek = T.e;
        for (int k = 1; k <= order; ++k) {
            Ld[k] += static_cast<double>(T.sign) * ek * psi[k - 1];
            ek *= T.e;
        }
    }
    for (int j = 1; j <= order; ++j) {
        cd acc(0.0, 0.0);
        for (int k = 0; k < j; ++k) acc += binom(j - 1, k) * out.bell[k] * Ld[j - k];
        out.bell[j] = acc;
    }
    return out;
}

} // namespace

Strip contour_strip(const MbIntegrand& f, double s) {
    Strip st{-kInf, kInf};
    for (const auto& T : f.terms) {
        if (T.sign < 0 || T.d == 0.0) continue;
        const double base = T.c + T.e * s;
        if (T.d > 0.0) {
            st.lo = std::max(st.lo, -base / T.d);
        } else {
            st.hi = std::min(st.hi, base / (-T.d));
        }
    }
    return st;
}

std::vector<MbResult> mb_evaluate_multi(const MbIntegrand& f, double s,
                                        int max_order,
                                        const ContourConfig& cfg) {
    const bool overridden =
        !std::isnan(cfg.strip_lo) && !std::isnan(cfg.strip_hi);
    const Strip strip = overridden ? Strip{cfg.strip_lo, cfg.strip_hi}
                                   : contour_strip(f, s);
    if (!(strip.lo < strip.hi)) {
        throw numerics_error("mb_evaluate: pole families overlap, no contour placeable");
    }
    const double g0 = pick_abscissa(f, s, cfg, strip);

    // Truncation height: probe until the integrand has decayed ~e^-60
    // below its on-axis value.
    double T = cfg.truncation_height;
    if (T <= 0.0) {
        const double M0 = eval_node(f, s, 0, g0, 0.0).log_f.real();
        T = 5.0;
        while (T < 1e6 && eval_node(f, s, 0, g0, T).log_f.real() - M0 > -60.0) T *= 1.6;
        T *= 1.1;
    }

    double h = cfg.node_count > 0 ? 2.0 * T / cfg.node_count : 0.5;
    const int max_ref = cfg.node_count > 0 ? 1 : cfg.max_refinements;
    const int n_ord = max_order + 1;

    // Scaled running sums: sums[m] * exp(M) is the node sum for order m.
    // Each refinement halves h and adds only the odd (new) nodes.
    std::vector<cd> sums(n_ord, cd(0.0, 0.0));
    double M = -kInf;
    std::vector<cd> prev(n_ord, cd(0.0, 0.0));
    double prev_M = 0.0;
    bool have_prev = false, converged = false;
    double err_estimate = 0.0;

    int n_half = static_cast<int>(std::ceil(T / h));
    for (int ref = 0; ref < max_ref; ++ref) {
        // new nodes this refinement: all on the first pass, then only the
        // odd-index nodes of the halved grid (even indices coincide with the
        // previous grid and are already accumulated)
        std::vector<double> taus;
        if (ref == 0) {
            for (int j = -n_half; j <= n_half; ++j) taus.push_back(j * h);
        } else {
            for (int j = -n_half + 1; j <= n_half; j += 2) taus.push_back(j * h);
        }
        // scan for the scaling maximum among new nodes
        double M_new = M;
        std::vector<NodeEval> nodes(taus.size());
        for (std::size_t i = 0; i < taus.size(); ++i) {
            nodes[i] = eval_node(f, s, max_order, g0, taus[i]);
            M_new = std::max(M_new, nodes[i].log_f.real());
        }
        if (M_new > M && std::isfinite(M)) {
            const cd rescale = std::exp(cd(M - M_new, 0.0));
            for (auto& v : sums) v *= rescale;
        }
        M = M_new;
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            const cd w = std::exp(nodes[i].log_f - M);
            for (int m = 0; m < n_ord; ++m) sums[m] += w * nodes[i].bell[m];
        }

        std::vector<cd> val(n_ord);
        for (int m = 0; m < n_ord; ++m) val[m] = sums[m] * (h / (2.0 * kPi));
        if (have_prev) {
            double worst = 0.0;
            for (int m = 0; m < n_ord; ++m) {
                const cd cur = val[m] * std::exp(M - std::max(M, prev_M));
                const cd old = prev[m] * std::exp(prev_M - std::max(M, prev_M));
                const double scale = std::max(std::abs(cur), 1e-300);
                worst = std::max(worst, std::abs(cur - old) / scale);
            }
            err_estimate = worst;
            if (worst <= cfg.rel_tol) {
                converged = true;
                prev = val;
                prev_M = M;
                break;
            }
        }
        prev = val;
        prev_M = M;
        have_prev = true;
        h *= 0.5;
        n_half *= 2;
    }
    if (cfg.node_count > 0) converged = true;

    std::vector<MbResult> out(n_ord);
    for (int m = 0; m < n_ord; ++m) {
        const double re = prev[m].real(), im = prev[m].imag();
        out[m].imag_rel = std::abs(im) / std::max(std::abs(re), 1e-300);
        out[m].sign = re > 0.0 ? 1 : (re < 0.0 ? -1 : 0);
        out[m].log_abs = prev_M + std::log(std::max(std::abs(re), 1e-300));
        out[m].value = re * std::exp(prev_M);
        out[m].err_estimate = err_estimate;
        out[m].converged = converged;
    }
    if (!converged) {
        throw numerics_error("mb_evaluate: quadrature did not self-converge",
                             err_estimate);
    }
    return out;
}

MbResult mb_evaluate(const MbIntegrand& f, double s, int order, const ContourConfig& cfg) {
    return mb_evaluate_multi(f, s, order, cfg)[order];
}

double mb_leading_residues(const MbIntegrand& f, double s, int order, int k_max) {
    // Right-family poles: numerator terms with d < 0, t*(k) = (c + e s + k)/(-d).
    struct Pole {
        std::size_t term;
        int k;
        double t;
    };
    std::vector<Pole> poles;
    for (std::size_t i = 0; i < f.terms.size(); ++i) {
        const auto& T = f.terms[i];
        if (T.sign < 0 || T.d >= 0.0) continue;
        for (int k = 0; k <= k_max; ++k) {
            poles.push_back({i, k, (T.c + T.e * s + k) / (-T.d)});
        }
    }
    // Drop poles cancelled by a denominator gamma sitting at a non-positive
    // integer (zero residue); reject genuine higher-order poles, which this
    // truncated expansion cannot handle.
    std::vector<Pole> live;
    for (const auto& p : poles) {
        bool cancelled = false;
        for (std::size_t i = 0; i < f.terms.size(); ++i) {
            if (i == p.term) continue;
            const auto& T = f.terms[i];
            const double arg = T.c + T.d * p.t + T.e * s;
            if (arg < 0.5 && std::abs(arg - std::round(arg)) < 1e-9) {
                if (T.sign < 0) {
                    cancelled = true;
                } else {
                    throw numerics_error(
                        "mb_leading_residues: higher-order pole encountered");
                }
            }
        }
        if (!cancelled) live.push_back(p);
    }
    for (std::size_t i = 0; i < live.size(); ++i) {
        for (std::size_t j = i + 1; j < live.size(); ++j) {
            if (std::abs(live[i].t - live[j].t) < 1e-9) {
                throw numerics_error("mb_leading_residues: degenerate pole pair");
            }
        }
    }

    double total = 0.0;
    for (const auto& p : live) {
        const auto& Tj = f.terms[p.term];
        const double tp = p.t;          // pole location
        const double tps = Tj.e / (-Tj.d); // d t*/d s
        // log residue: L(s) = t* log z - log|d_j| - log(k!) + sum_{i != j} ...
        double log_abs = tp * f.log_z - std::log(-Tj.d);
        int sgn = (p.k % 2 == 0) ? 1 : -1; // (-1)^k / k!
        for (int i = 2; i <= p.k; ++i) log_abs -= std::log(static_cast<double>(i));
        std::vector<cd> Ld(order + 1, cd(0.0, 0.0));
        for (std::size_t i = 0; i < f.terms.size(); ++i) {
            if (i == p.term) continue;
            const auto& T = f.terms[i];
            const double arg = T.c + T.d * tp + T.e * s;
            const auto sl = log_gamma_signed(arg);
            log_abs += T.sign * sl.log_abs;
            if (T.sign > 0 && sl.sign < 0) sgn = -sgn;
            if (T.sign < 0 && sl.sign < 0) sgn = -sgn;
            const double slope = T.d * tps + T.e;
            if (slope != 0.0 && order > 0) {
                double sk = slope;
                for (int k = 1; k <= order; ++k) {
                    Ld[k] += static_cast<double>(T.sign) * sk *
                             polygamma(k - 1, cd(arg, 0.0));
                    sk *= slope;
                }
            }
        }
        if (order > 0 && tps != 0.0) Ld[1] += tps * f.log_z;
        double bell = 1.0;
        if (order > 0) {
            std::vector<cd> b(order + 1, cd(0.0, 0.0));
            b[0] = cd(1.0, 0.0);
            for (int j = 1; j <= order; ++j) {
                cd acc(0.0, 0.0);
                for (int k = 0; k < j; ++k) acc += binom(j - 1, k) * b[k] * Ld[j - k];
                b[j] = acc;
            }
            bell = b[order].real();
        }
        total += sgn * std::exp(log_abs) * bell;
    }
    return total;
}

} // namespace rfso::specfun

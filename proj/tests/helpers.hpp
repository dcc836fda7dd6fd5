#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>
#include <gsl/gsl_sf_gamma.h>

namespace testutil {

inline const int kGslOff = [] {
    gsl_set_error_handler_off();
    return 0;
}();

struct FnHolder {
    std::function<double(double)> fn;
};

inline double fn_tramp(double x, void* p) {
    return static_cast<FnHolder*>(p)->fn(x);
}

// Adaptive integral over [a, b].
inline double integrate(const std::function<double(double)>& fn, double a,
                        double b, double rel = 1e-9) {
    FnHolder h{fn};
    gsl_function g{&fn_tramp, &h};
    gsl_integration_workspace* w = gsl_integration_workspace_alloc(4000);
    double res = 0.0, err = 0.0;
    gsl_integration_qags(&g, a, b, 0.0, rel, 4000, w, &res, &err);
    gsl_integration_workspace_free(w);
    return res;
}

// Adaptive integral over [a, inf).
inline double integrate_upper(const std::function<double(double)>& fn,
                              double a, double rel = 1e-9) {
    FnHolder h{fn};
    gsl_function g{&fn_tramp, &h};
    gsl_integration_workspace* w = gsl_integration_workspace_alloc(4000);
    double res = 0.0, err = 0.0;
    gsl_integration_qagiu(&g, a, 0.0, rel, 4000, w, &res, &err);
    gsl_integration_workspace_free(w);
    return res;
}

// Chi-square goodness-of-fit p-value: observed counts vs expected counts.
inline double chi2_pvalue(const std::vector<double>& observed,
                          const std::vector<double>& expected) {
    double chi2 = 0.0;
    int dof = -1;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        if (expected[i] < 5.0) continue; // merge-tail convention: skip sparse bins
        chi2 += (observed[i] - expected[i]) * (observed[i] - expected[i]) /
                expected[i];
        ++dof;
    }
    return gsl_sf_gamma_inc_Q(0.5 * dof, 0.5 * chi2);
}

// Two-sided KS distance between an empirical sample (will be sorted) and a
// reference CDF evaluated exactly at the sample points is expensive; this
// evaluates the CDF on every k-th order statistic, which bounds the true
// statistic within O(k/n).
inline double ks_distance(std::vector<double>& sample,
                          const std::function<double(double)>& cdf,
                          std::size_t stride = 1) {
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); i += stride) {
        const double f = cdf(sample[i]);
        d = std::max(d, std::abs(f - i / n));
        d = std::max(d, std::abs(f - (i + 1) / n));
    }
    return d;
}

// KS distance with the reference CDF evaluated on a quantile grid and
// piecewise-linearly interpolated in between (for expensive CDFs). The
// interpolation error is negligible for smooth CDFs at grid >= 1024.
inline double ks_distance_interp(std::vector<double>& sample,
                                 const std::function<double(double)>& cdf,
                                 std::size_t grid = 1024) {
    std::sort(sample.begin(), sample.end());
    const std::size_t n = sample.size();
    std::vector<double> gx(grid + 1), gf(grid + 1);
    for (std::size_t j = 0; j <= grid; ++j) {
        const std::size_t idx = std::min(n - 1, j * (n - 1) / grid);
        gx[j] = sample[idx];
        gf[j] = cdf(gx[j]);
    }
    double d = 0.0;
    std::size_t j = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = sample[i];
        while (j + 1 < gx.size() && gx[j + 1] < x) ++j;
        double f;
        if (j + 1 >= gx.size() || gx[j + 1] <= gx[j]) {
            f = gf[j];
        } else {
            const double w = (x - gx[j]) / (gx[j + 1] - gx[j]);
            f = gf[j] + w * (gf[j + 1] - gf[j]);
        }
        d = std::max(d, std::abs(f - static_cast<double>(i) / n));
        d = std::max(d, std::abs(f - static_cast<double>(i + 1) / n));
    }
    return d;
}

inline double ks_band_99(std::size_t n) {
    return 1.6276 / std::sqrt(static_cast<double>(n));
}

} // namespace testutil

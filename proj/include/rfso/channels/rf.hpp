#pragma once

#include "rfso/util/random.hpp"

namespace rfso::channels {

// K-distributed RF SNR: gamma_RF = A2 * G * E with G ~ Gamma(v + 1),
// E ~ Exp(1), A2 = 4 a^2 mean_snr.
struct RfLinkParams {
    double a = 0.75;       // K-distribution shape
    double v = 0.75;       // K-distribution order
    double mean_snr = 1.0; // linear

    void validate() const;
    double a2() const { return 4.0 * a * a * mean_snr; }
    double mean() const { return a2() * (v + 1.0); } // E[gamma_RF]
};

double rf_pdf(const RfLinkParams& p, double gamma);
double rf_cdf(const RfLinkParams& p, double gamma);
// Complement 1 - F(gamma), accurate in the deep tail.
double rf_cdf_complement(const RfLinkParams& p, double gamma);
double sample_rf(const RfLinkParams& p, util::Rng& rng);

// Aggregate co-channel interference: sum of `count` i.i.d. squared-Nakagami
// powers; Gamma(count * m, scale mean_inr / m).
struct InterferenceParams {
    int count = 2;
    double m = 2.3;
    double mean_inr = 1.0; // per-interferer, linear

    void validate() const;
    double shape() const { return count * m; }
    double scale() const { return mean_inr / m; }
};

double interference_pdf(const InterferenceParams& p, double x);
double sample_interference(const InterferenceParams& p, util::Rng& rng);

} // namespace rfso::channels

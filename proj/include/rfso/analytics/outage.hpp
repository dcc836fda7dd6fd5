#pragma once

#include "rfso/system/monte_carlo.hpp"

namespace rfso::analytics {

// Debug/mutation hooks: multiplicative or additive perturbations of derived
// constants, used by the validation harness to prove it detects
// transcription errors. All-default means "no perturbation".
struct Perturbation {
    double d4_scale = 1.0;   // scales the CDF contour argument constant
    double tau5_shift = 0.0; // shifts the interference parameter block
    double bmn_scale = 1.0;  // scales the I0-series coefficients

    bool active() const {
        return d4_scale != 1.0 || tau5_shift != 0.0 || bmn_scale != 1.0;
    }
};

struct OutageResult {
    double exact = 0.0;
    double asymptotic = 0.0; // NaN when the asymptote is unavailable
    double f1 = 0.0;         // CDF of the S1-side SINR at threshold
    double f2 = 0.0;         // CDF of the S2-side SINR at threshold
};

// CDF of the node-S1 SINR (FSO reception limited by Rx IQI and CCI).
double cdf_dir1(const system::ScenarioParams& s, double gamma,
                const Perturbation& mut = {});
// CDF of the node-S2 SINR (RF reception limited by Tx IQI and CCI).
double cdf_dir2(const system::ScenarioParams& s, double gamma,
                const Perturbation& mut = {});

OutageResult outage_exact(const system::ScenarioParams& s,
                          const Perturbation& mut = {});

// High-SNR approximation (leading contour residues per direction). A regime
// note is printed when both mean SNRs sit below floor_db.
double outage_asymptotic(const system::ScenarioParams& s,
                         double floor_db = 20.0);

} // namespace rfso::analytics

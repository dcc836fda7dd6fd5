#pragma once

#include "rfso/analytics/outage.hpp"

namespace rfso::analytics {

struct AsrResult {
    double exact = 0.0;      // r1 + r2, bits/s/Hz
    double asymptotic = 0.0; // NaN when unavailable
    double r1 = 0.0;
    double r2 = 0.0;
};

AsrResult asr_exact(const system::ScenarioParams& s,
                    const Perturbation& mut = {});

double asr_asymptotic(const system::ScenarioParams& s, double floor_db = 20.0);

} // namespace rfso::analytics

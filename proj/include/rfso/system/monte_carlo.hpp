#pragma once

#include <cstdint>

#include "rfso/channels/fso.hpp"
#include "rfso/channels/rf.hpp"
#include "rfso/system/iqi.hpp"

namespace rfso::system {

struct ScenarioParams {
    IqiParams iqi;
    channels::RfLinkParams rf;
    channels::FsoLinkParams fso;
    channels::InterferenceParams interference;
    double threshold = 1.0; // gamma_th, linear

    void validate() const;
};

struct McConfig {
    std::uint64_t trials = 1'000'000;
    std::uint64_t seed = 1;
    std::uint64_t batch = 256; // logical shard count (fixed, not thread count)
    bool parallel = true;      // false selects the serial reference path

    void validate() const;
};

struct McEstimate {
    double value = 0.0;
    double stderr_ = 0.0;
};

// Empirical Pr[min end SINR < threshold], i.e. the complement of both
// directions succeeding. Per trial the RF SNR and the
// composite irradiance are drawn once and shared coherently across both
// directions; the aggregate interference is drawn independently per
// receiving node. Deterministic for fixed (seed, batch).
McEstimate mc_outage(const ScenarioParams& s, const McConfig& cfg);

// Empirical sum rate R1 + R2, jackknife standard error over shards.
McEstimate mc_asr(const ScenarioParams& s, const McConfig& cfg);

} // namespace rfso::system

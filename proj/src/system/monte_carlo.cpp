#include "rfso/system/monte_carlo.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace rfso::system {

void ScenarioParams::validate() const {
    iqi.validate();
    rf.validate();
    fso.validate();
    interference.validate();
    if (!(threshold > 0.0)) {
        throw std::invalid_argument("ScenarioParams: threshold must be > 0");
    }
}

void McConfig::validate() const {
    if (trials < 1) throw std::invalid_argument("McConfig: trials must be >= 1");
    if (batch < 1) throw std::invalid_argument("McConfig: batch must be >= 1");
}

namespace {

struct ShardPlan {
    std::uint64_t shards;
    std::uint64_t base; // trials per shard
    std::uint64_t rem;  // first `rem` shards get one extra trial

    std::uint64_t trials_of(std::uint64_t i) const {
        return base + (i < rem ? 1 : 0);
    }
};

ShardPlan plan(const McConfig& cfg) {
    const std::uint64_t shards = std::min<std::uint64_t>(cfg.batch, cfg.trials);
    return {shards, cfg.trials / shards, cfg.trials % shards};
}

// One trial's pair of end SINRs.
template <typename F>
void run_shards(const ScenarioParams& s, const McConfig& cfg, F&& per_shard) {
    const ShardPlan pl = plan(cfg);
    if (cfg.parallel) {
#if defined(RFSO_HAVE_OPENMP)
#pragma omp parallel for schedule(dynamic)
#endif
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(pl.shards); ++i) {
            per_shard(static_cast<std::uint64_t>(i), pl.trials_of(i));
        }
    } else {
        for (std::uint64_t i = 0; i < pl.shards; ++i) per_shard(i, pl.trials_of(i));
    }
}

struct TrialDraw {
    double sinr1;
    double sinr2;
};

class TrialSampler {
public:
    TrialSampler(const ScenarioParams& s)
        : s_(s),
          tx_(iqi_coefficients(s.iqi, IqiSide::kTx)),
          rx_(iqi_coefficients(s.iqi, IqiSide::kRx)),
          mean_irr_(channels::fso_mean_irradiance(s.fso)) {}

    TrialDraw operator()(util::Rng& rng) const {
        const double g_rf = channels::sample_rf(s_.rf, rng);
        const double irr = channels::sample_dgg(s_.fso.turbulence, rng) *
                           channels::sample_pointing(s_.fso.pointing, rng);
        const double g_fso = s_.fso.mu_rho *
                             std::pow(irr / mean_irr_, double(s_.fso.rho));
        const double gi1 = channels::sample_interference(s_.interference, rng);
        const double gi2 = channels::sample_interference(s_.interference, rng);
        return {sinr_node1(g_fso, gi1, rx_.irr),
                sinr_node2(g_rf, gi2, tx_.irr, tx_.signal_gain())};
    }

private:
    const ScenarioParams& s_;
    IqiCoefficients tx_, rx_;
    double mean_irr_;
};

} // namespace

McEstimate mc_outage(const ScenarioParams& s, const McConfig& cfg) {
    s.validate();
    cfg.validate();
    const TrialSampler sample(s);
    const ShardPlan pl = plan(cfg);
    std::vector<std::uint64_t> hits(pl.shards, 0);
    run_shards(s, cfg, [&](std::uint64_t i, std::uint64_t n) {
        util::Rng rng = util::Rng::shard_stream(cfg.seed, i);
        std::uint64_t h = 0;
        for (std::uint64_t t = 0; t < n; ++t) {
            const TrialDraw d = sample(rng);
            // Outage when either end-to-end SINR misses the threshold:
            // 1 - Pr[both succeed], the complement-product form.
            if (d.sinr1 < s.threshold || d.sinr2 < s.threshold) ++h;
        }
        hits[i] = h;
    });
    std::uint64_t total = 0;
    for (auto h : hits) total += h; // fixed merge order
    const double p = static_cast<double>(total) / cfg.trials;
    const double se = std::sqrt(std::max(p * (1.0 - p), 0.0) / cfg.trials);
    return {p, se};
}

McEstimate mc_asr(const ScenarioParams& s, const McConfig& cfg) {
    s.validate();
    cfg.validate();
    const TrialSampler sample(s);
    const ShardPlan pl = plan(cfg);
    std::vector<double> shard_mean(pl.shards, 0.0);
    const double inv_2ln2 = 0.5 / std::log(2.0);
    run_shards(s, cfg, [&](std::uint64_t i, std::uint64_t n) {
        util::Rng rng = util::Rng::shard_stream(cfg.seed, i);
        double acc = 0.0;
        for (std::uint64_t t = 0; t < n; ++t) {
            const TrialDraw d = sample(rng);
            acc += inv_2ln2 * (std::log1p(d.sinr1) + std::log1p(d.sinr2));
        }
        shard_mean[i] = acc / n;
    });
    // jackknife over shards (equal weights; shard sizes differ by <= 1)
    double mean = 0.0;
    for (auto m : shard_mean) mean += m;
    mean /= pl.shards;
    double var = 0.0;
    for (auto m : shard_mean) var += (m - mean) * (m - mean);
    const double se = pl.shards > 1
                          ? std::sqrt(var / (pl.shards * (pl.shards - 1.0)))
                          : 0.0;
    return {mean, se};
}

} // namespace rfso::system

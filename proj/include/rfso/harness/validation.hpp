#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "rfso/analytics/outage.hpp"
#include "rfso/system/monte_carlo.hpp"

namespace rfso::harness {

struct ScenarioCase {
    std::string id;
    system::ScenarioParams scenario;
};

struct ValidationRow {
    std::string scenario_id;
    std::string metric; // "outage" or "asr"
    double analytic = 0.0;
    double asymptotic = 0.0;
    double mc_estimate = 0.0;
    double mc_stderr = 0.0;
    double z_score = 0.0;
    bool pass = false;
    std::string error; // empty on success; a failed row never aborts the grid
};

struct ValidationReport {
    std::uint64_t seed = 0;
    std::uint64_t trials = 0;
    std::string commit_stamp;
    std::vector<ValidationRow> rows;

    bool all_pass() const;
};

// Runs every scenario through both the closed forms and the Monte Carlo
// engine and scores the agreement. One row per (scenario, metric), in grid
// order; deterministic for a fixed (grid, cfg). Per-row RNG streams are
// derived from cfg.seed and the scenario id. The perturbation hook feeds the
// mutation smoke test: a corrupted constant must flip at least one row.
ValidationReport run_validation(const std::vector<ScenarioCase>& grid,
                                const system::McConfig& cfg,
                                const analytics::Perturbation& mut = {});

// CSV with a fixed column order and '#'-prefixed metadata header; output is
// byte-identical for identical reports.
void write_csv(const ValidationReport& report, std::ostream& os);
std::string to_csv(const ValidationReport& report);

// Short free-text summary (row counts, worst |z|, failing row ids).
std::string summary_text(const ValidationReport& report);

} // namespace rfso::harness

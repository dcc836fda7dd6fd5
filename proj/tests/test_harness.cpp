#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rfso/cli/commands.hpp"
#include "rfso/harness/validation.hpp"

using namespace rfso;
using harness::ScenarioCase;
using harness::ValidationReport;

namespace {

system::ScenarioParams mid_scenario() {
    cli::RunConfig c = cli::parse_config("");
    c.scenario.iqi = {1.213, 1.213, 3.0 * M_PI / 180.0, 3.0 * M_PI / 180.0};
    c.scenario.rf.mean_snr = 100.0;
    c.scenario.fso.mu_rho = 100.0;
    c.scenario.fso.pointing.boresight = 0.3;
    return c.scenario;
}

} // namespace

TEST_CASE("run_validation: passes on agreeing scenarios, row order fixed") {
    std::vector<ScenarioCase> grid;
    grid.push_back({"mid", mid_scenario()});
    auto clean = mid_scenario();
    clean.interference.count = 0; // no interference: trivial agreement
    grid.push_back({"clean", clean});

    system::McConfig cfg;
    cfg.trials = 300000;
    cfg.seed = 5;
    const auto rep = harness::run_validation(grid, cfg);
    REQUIRE(rep.rows.size() == 4);
    CHECK(rep.rows[0].scenario_id == "mid");
    CHECK(rep.rows[0].metric == "outage");
    CHECK(rep.rows[1].metric == "asr");
    CHECK(rep.rows[2].scenario_id == "clean");
    CHECK(rep.all_pass());
    CHECK(rep.seed == 5);
    CHECK(rep.trials == 300000);
    CHECK_FALSE(rep.commit_stamp.empty());

    // z-score definition holds on every finite row
    for (const auto& r : rep.rows) {
        if (r.mc_stderr > 0.0) {
            CHECK(std::abs(r.z_score -
                           (r.analytic - r.mc_estimate) / r.mc_stderr) < 1e-12);
        }
        CHECK(r.error.empty());
    }
}

TEST_CASE("run_validation: report bytes reproducible, seeds matter per row") {
    std::vector<ScenarioCase> grid{{"mid", mid_scenario()}};
    system::McConfig cfg;
    cfg.trials = 100000;
    cfg.seed = 9;
    const auto a = harness::run_validation(grid, cfg);
    const auto b = harness::run_validation(grid, cfg);
    CHECK(harness::to_csv(a) == harness::to_csv(b));

    system::McConfig other = cfg;
    other.seed = 10;
    const auto c = harness::run_validation(grid, other);
    CHECK(harness::to_csv(a) != harness::to_csv(c));
}

TEST_CASE("run_validation: a failing scenario yields an error row, not an abort") {
    auto bad = mid_scenario();
    bad.rf.a = -1.0; // invalid shaping: closed form and sampler both reject
    std::vector<ScenarioCase> grid{{"bad", bad}, {"mid", mid_scenario()}};
    system::McConfig cfg;
    cfg.trials = 50000;
    const auto rep = harness::run_validation(grid, cfg);
    REQUIRE(rep.rows.size() == 4);
    CHECK_FALSE(rep.rows[0].pass);
    CHECK_FALSE(rep.rows[0].error.empty());
    CHECK(std::isnan(rep.rows[0].analytic));
    CHECK(rep.rows[2].pass); // the healthy scenario still ran
    CHECK_FALSE(rep.all_pass());
    CHECK(harness::summary_text(rep).find("bad/outage") != std::string::npos);
}

TEST_CASE("run_validation: mutation smoke test flips rows") {
    std::vector<ScenarioCase> grid{{"mid", mid_scenario()}};
    system::McConfig cfg;
    cfg.trials = 400000;
    CHECK(harness::run_validation(grid, cfg).all_pass());

    analytics::Perturbation mut;
    mut.d4_scale = 1.1;
    CHECK_FALSE(harness::run_validation(grid, cfg, mut).all_pass());
}

TEST_CASE("run_validation: rejects an empty grid") {
    system::McConfig cfg;
    CHECK_THROWS_AS(harness::run_validation({}, cfg), std::invalid_argument);
}

TEST_CASE("csv: fixed header, metadata lines, parsable rows") {
    std::vector<ScenarioCase> grid{{"mid", mid_scenario()}};
    system::McConfig cfg;
    cfg.trials = 50000;
    const std::string csv = harness::to_csv(harness::run_validation(grid, cfg));
    CHECK(csv.rfind("# seed=", 0) == 0);
    CHECK(csv.find("# trials=50000\n") != std::string::npos);
    CHECK(csv.find("# commit=") != std::string::npos);
    CHECK(csv.find("scenario_id,metric,analytic,asymptotic,mc_estimate,"
                   "mc_stderr,z_score,pass,error\n") != std::string::npos);
    CHECK(csv.find("mid,outage,") != std::string::npos);
    CHECK(csv.find("mid,asr,") != std::string::npos);
}

TEST_CASE("default_validation_grid: 12 scenarios spanning the cross-check axes") {
    const auto grid = cli::default_validation_grid();
    CHECK(grid.size() == 12);
    int ideal = 0, n3 = 0, rho2 = 0, boresight = 0;
    for (const auto& g : grid) {
        g.scenario.validate();
        if (system::iqi_coefficients(g.scenario.iqi, system::IqiSide::kTx)
                .ideal())
            ++ideal;
        if (g.scenario.interference.count == 3) ++n3;
        if (g.scenario.fso.rho == 2) ++rho2;
        if (g.scenario.fso.pointing.boresight > 0.0) ++boresight;
    }
    CHECK(ideal == 4);
    CHECK(n3 == 6);
    CHECK(rho2 == 6);
    CHECK(boresight == 6);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "rfso/analytics/sum_rate.hpp"
#include "rfso/cli/commands.hpp"

using namespace rfso;
using cli::config_error;
using cli::RunConfig;
using cli::SweepSpec;

namespace {

RunConfig nontrivial_config() {
    RunConfig c = cli::parse_config("");
    c.scenario.iqi = {1.425, 0.521, 3.0 * M_PI / 180.0, 1.0 * M_PI / 180.0};
    c.scenario.rf = {3.5, 3.5, 316.0};
    c.scenario.fso.rho = 2;
    c.scenario.fso.mu_rho = 250.0;
    c.scenario.fso.bessel_truncation = 8;
    c.scenario.fso.pointing.boresight = 0.45;
    c.scenario.interference = {3, 2.3, 0.316};
    c.scenario.threshold = 2.5;
    c.mc.trials = 12345;
    c.mc.seed = 99;
    c.mc.batch = 64;
    c.mc.parallel = false;
    return c;
}

int run(std::vector<std::string> args) {
    std::vector<char*> argv;
    args.insert(args.begin(), "rfso");
    for (auto& a : args) argv.push_back(a.data());
    return cli::run_cli(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    REQUIRE(f.good());
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

} // namespace

TEST_CASE("config: parse(emit(config)) round trip is exact") {
    const RunConfig c = nontrivial_config();
    const RunConfig d = cli::parse_config(cli::emit_config(c));
    CHECK(d.scenario.iqi.epsilon_t == c.scenario.iqi.epsilon_t);
    CHECK(d.scenario.iqi.epsilon_r == c.scenario.iqi.epsilon_r);
    CHECK(d.scenario.iqi.phi_t == doctest::Approx(c.scenario.iqi.phi_t).epsilon(1e-15));
    CHECK(d.scenario.rf.a == c.scenario.rf.a);
    CHECK(d.scenario.rf.v == c.scenario.rf.v);
    CHECK(d.scenario.rf.mean_snr == c.scenario.rf.mean_snr);
    CHECK(d.scenario.fso.rho == c.scenario.fso.rho);
    CHECK(d.scenario.fso.mu_rho == c.scenario.fso.mu_rho);
    CHECK(d.scenario.fso.bessel_truncation == c.scenario.fso.bessel_truncation);
    CHECK(d.scenario.fso.turbulence.alpha1 == c.scenario.fso.turbulence.alpha1);
    CHECK(d.scenario.fso.turbulence.beta2 == c.scenario.fso.turbulence.beta2);
    CHECK(d.scenario.fso.pointing.boresight == c.scenario.fso.pointing.boresight);
    CHECK(d.scenario.fso.pointing.jitter == c.scenario.fso.pointing.jitter);
    CHECK(d.scenario.interference.count == c.scenario.interference.count);
    CHECK(d.scenario.interference.m == c.scenario.interference.m);
    CHECK(d.scenario.interference.mean_inr == c.scenario.interference.mean_inr);
    CHECK(d.scenario.threshold == c.scenario.threshold);
    CHECK(d.mc.trials == c.mc.trials);
    CHECK(d.mc.seed == c.mc.seed);
    CHECK(d.mc.batch == c.mc.batch);
    CHECK(d.mc.parallel == c.mc.parallel);
}

TEST_CASE("config: dB/linear suffixes") {
    const RunConfig c = cli::parse_config("[rf]\nmean_snr_db = 20\n");
    CHECK(c.scenario.rf.mean_snr == doctest::Approx(100.0).epsilon(1e-12));
    const RunConfig d =
        cli::parse_config("[interference]\nmean_inr_db = -5\n");
    CHECK(d.scenario.interference.mean_inr ==
          doctest::Approx(std::pow(10.0, -0.5)).epsilon(1e-12));
    CHECK_THROWS_AS(
        cli::parse_config("[rf]\nmean_snr_db = 20\nmean_snr_lin = 100\n"),
        config_error);
}

TEST_CASE("config: malformed input raises config_error") {
    CHECK_THROWS_AS(cli::parse_config("[rf]\nbogus_key = 1\n"), config_error);
    CHECK_THROWS_AS(cli::parse_config("[nosuchsection]\nx = 1\n"), config_error);
    CHECK_THROWS_AS(cli::parse_config("[rf\na = 1\n"), config_error);
    CHECK_THROWS_AS(cli::parse_config("a = 1\n"), config_error);
    CHECK_THROWS_AS(cli::parse_config("[rf]\na = 1\na = 2\n"), config_error);
    CHECK_THROWS_AS(cli::parse_config("[rf]\na = zebra\n"), config_error);
    CHECK_THROWS_AS(cli::parse_config("[rf]\na = -1\n"), config_error);
    CHECK_THROWS_AS(cli::parse_config("[rf]\nno equals sign\n"), config_error);
}

TEST_CASE("sweep spec: validation rules") {
    auto parse_sweep = [](const std::string& body) {
        return cli::to_sweep_spec(cli::parse_ini("[sweep]\n" + body));
    };
    const SweepSpec ok = parse_sweep(
        "variable = snr_db\nfrom = 10\nto = 20\nstep = 5\noutputs = "
        "outage_exact\n");
    CHECK(ok.grid().size() == 3);
    CHECK_THROWS_AS(parse_sweep("variable = nope\nfrom = 1\nto = 2\nstep = "
                                "1\noutputs = outage_exact\n"),
                    config_error);
    CHECK_THROWS_AS(parse_sweep("variable = snr_db\nfrom = 1\nto = 2\nstep = "
                                "0\noutputs = outage_exact\n"),
                    config_error);
    CHECK_THROWS_AS(parse_sweep("variable = snr_db\nfrom = 3\nto = 2\nstep = "
                                "1\noutputs = outage_exact\n"),
                    config_error);
    CHECK_THROWS_AS(parse_sweep("variable = snr_db\nfrom = 1\nto = 2\nstep = "
                                "1\noutputs = outage_exact, nope\n"),
                    config_error);
    CHECK_THROWS_AS(parse_sweep("variable = snr_db\nfrom = 1\nto = 2\nstep = "
                                "1\n"),
                    config_error);
}

TEST_CASE("run_sweep: single point equals the direct analytics call") {
    RunConfig base = cli::parse_config("");
    base.scenario.iqi = {1.213, 1.213, 3.0 * M_PI / 180.0, 3.0 * M_PI / 180.0};
    SweepSpec spec;
    spec.variable = "snr_db";
    spec.from = spec.to = 20.0;
    spec.step = 1.0;
    spec.outputs = {"outage_exact", "asr_exact"};
    const cli::Table t = cli::run_sweep(base, spec);
    REQUIRE(t.rows.size() == 1);
    REQUIRE(t.columns.size() == 4);

    RunConfig direct = base;
    direct.scenario.rf.mean_snr = 100.0;
    direct.scenario.fso.mu_rho = 100.0;
    const auto out = analytics::outage_exact(direct.scenario);
    const auto asr = analytics::asr_exact(direct.scenario);
    CHECK(t.rows[0][1] == cli::format_double(out.exact));
    CHECK(t.rows[0][2] == cli::format_double(asr.exact));
    CHECK(t.rows[0][3].empty()); // no per-point error
}

TEST_CASE("emit_csv / emit_plotdata: stable bytes, labeled units") {
    RunConfig base = cli::parse_config("");
    base.mc.trials = 20000;
    SweepSpec spec;
    spec.variable = "threshold_db";
    spec.from = -3.0;
    spec.to = 3.0;
    spec.step = 3.0;
    spec.outputs = {"outage_exact", "outage_mc"};
    const cli::Table t1 = cli::run_sweep(base, spec);
    const cli::Table t2 = cli::run_sweep(base, spec);

    std::ostringstream a, b;
    cli::emit_csv(t1, a);
    cli::emit_csv(t2, b);
    CHECK(a.str() == b.str());
    CHECK(a.str().rfind("threshold_db,outage_exact,outage_mc,"
                        "outage_mc_stderr,error\n",
                        0) == 0);

    std::ostringstream p;
    cli::emit_plotdata(t1, p);
    CHECK(p.str().rfind("# threshold_db outage_exact outage_mc "
                        "outage_mc_stderr error\n",
                        0) == 0);
    // gnuplot-compatible: same token count on every line
    std::istringstream lines(p.str());
    std::string line;
    while (std::getline(lines, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string tok;
        int n = 0;
        while (ls >> tok) ++n;
        CHECK(n == 5);
    }
}

TEST_CASE("presets: one per figure, unstated defaults marked, texts parse") {
    const auto& ps = cli::presets();
    REQUIRE(ps.size() == 3);
    CHECK(ps[0].name == "fig1");
    CHECK(ps[1].name == "fig2");
    CHECK(ps[2].name == "fig3");
    for (const auto& p : ps) {
        CHECK(p.text.find("DEFAULT (assumed)") != std::string::npos);
        const auto m = cli::parse_ini(p.text);
        const RunConfig c = cli::to_run_config(m); // full validation
        c.scenario.validate();
        const SweepSpec s = cli::to_sweep_spec(m);
        CHECK(!s.outputs.empty());
        CHECK(!p.curves.empty());
    }
    CHECK(cli::find_preset("fig2").curves.size() == 6);
    CHECK_THROWS_AS(cli::find_preset("fig9"), config_error);
}

TEST_CASE("run_preset: long-format table with curve labels") {
    const auto& p = cli::find_preset("fig3");
    const cli::Table t = cli::run_preset(p, 3, 2000); // tiny MC for speed
    REQUIRE(!t.rows.empty());
    CHECK(t.columns[0] == "curve");
    CHECK(t.columns[1] == "snr_db");
    // 4 curves x 4 SNR points
    CHECK(t.rows.size() == 16);
    CHECK(t.rows[0][0] == "n2_inr0db");
    CHECK(t.rows[15][0] == "n3_inr-5db");
    for (const auto& row : t.rows) CHECK(row.back().empty());
}

TEST_CASE("run_cli: subcommands and exit codes") {
    const std::string dir = "/tmp/rfso_cli_test";
    std::remove((dir + "_cfg.ini").c_str());

    // config error -> 1
    CHECK(run({"eval", "--config", "/nonexistent/path.ini"}) == 1);

    // eval with a small config -> 0
    {
        std::ofstream f(dir + "_cfg.ini");
        f << "[mc]\ntrials = 20000\n[rf]\nmean_snr_db = 20\n[fso]\nmu_db = "
             "20\n";
    }
    CHECK(run({"eval", "--config", dir + "_cfg.ini", "--out",
               dir + "_eval.csv"}) == 0);
    const std::string eval_csv = slurp(dir + "_eval.csv");
    CHECK(eval_csv.find("outage_exact") != std::string::npos);
    CHECK(eval_csv.find("asr_mc") != std::string::npos);

    // sweep requires a [sweep] section -> config error
    CHECK(run({"sweep", "--config", dir + "_cfg.ini"}) == 1);
    {
        std::ofstream f(dir + "_sweep.ini");
        f << "[mc]\ntrials = 1000\n[sweep]\nvariable = snr_db\nfrom = "
             "10\nto = 20\nstep = 10\noutputs = outage_exact\n";
    }
    CHECK(run({"sweep", "--config", dir + "_sweep.ini", "--out",
               dir + "_sweep.csv", "--format", "plotdata"}) == 0);
    CHECK(slurp(dir + "_sweep.csv").rfind("# snr_db outage_exact error\n", 0) ==
          0);

    // preset listing and show -> 0; unknown preset -> 1
    CHECK(run({"preset", "list"}) == 0);
    CHECK(run({"preset", "show", "fig1"}) == 0);
    CHECK(run({"preset", "show", "fig9"}) == 1);

    // validate with few trials can fail statistically? No: tolerance scales
    // with stderr. Small trial count keeps runtime low. Exit 0 and bytes
    // reproducible across runs (fixed seed).
    CHECK(run({"validate", "--trials", "20000", "--seed", "4", "--out",
               dir + "_val1.csv"}) == 0);
    CHECK(run({"validate", "--trials", "20000", "--seed", "4", "--out",
               dir + "_val2.csv"}) == 0);
    CHECK(slurp(dir + "_val1.csv") == slurp(dir + "_val2.csv"));
}

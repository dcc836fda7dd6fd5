#include "rfso/cli/commands.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <csignal>
#include <fstream>
#include <iostream>

#include "rfso/analytics/sum_rate.hpp"

namespace rfso::cli {

namespace {

constexpr double kDegToRad = M_PI / 180.0;

void handle_sigint(int) { detail::request_interrupt(); }

system::ScenarioParams grid_scenario(double eps, double phi_deg, int count,
                                     double inr_db, double boresight,
                                     int rho) {
    RunConfig c = parse_config(""); // documented defaults
    c.scenario.iqi.epsilon_t = c.scenario.iqi.epsilon_r = eps;
    c.scenario.iqi.phi_t = c.scenario.iqi.phi_r = phi_deg * kDegToRad;
    c.scenario.rf.mean_snr = 100.0; // 20 dB equal-hop
    c.scenario.fso.mu_rho = 100.0;
    c.scenario.fso.rho = rho;
    c.scenario.fso.pointing.boresight = boresight;
    c.scenario.interference.count = count;
    c.scenario.interference.mean_inr = std::pow(10.0, inr_db / 10.0);
    return c.scenario;
}

std::ostream& open_out(std::ofstream& file, const std::string& path) {
    if (path.empty()) return std::cout;
    file.open(path);
    if (!file) throw config_error("output: cannot open '" + path + "'");
    return file;
}

int cmd_eval(const std::string& config_path, const std::string& out_path,
             std::uint64_t seed, std::uint64_t trials,
             const std::string& format) {
    RunConfig cfg = config_path.empty() ? parse_config("")
                                        : parse_config_file(config_path);
    if (seed) cfg.mc.seed = seed;
    if (trials) cfg.mc.trials = trials;

    const auto outage = analytics::outage_exact(cfg.scenario);
    const auto asr = analytics::asr_exact(cfg.scenario);
    const auto mc_out = system::mc_outage(cfg.scenario, cfg.mc);
    const auto mc_rate = system::mc_asr(cfg.scenario, cfg.mc);

    Table t;
    t.columns = {"metric", "value", "stderr"};
    auto row = [&](const char* name, double v, double se = 0.0) {
        t.rows.push_back({name, format_double(v), format_double(se)});
    };
    row("outage_exact", outage.exact);
    row("outage_asymptotic", outage.asymptotic);
    row("outage_f1", outage.f1);
    row("outage_f2", outage.f2);
    row("outage_mc", mc_out.value, mc_out.stderr_);
    row("asr_exact", asr.exact);
    row("asr_asymptotic", asr.asymptotic);
    row("asr_r1", asr.r1);
    row("asr_r2", asr.r2);
    row("asr_mc", mc_rate.value, mc_rate.stderr_);

    std::ofstream file;
    std::ostream& os = open_out(file, out_path);
    format == "plotdata" ? emit_plotdata(t, os) : emit_csv(t, os);
    return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& out_path,
              std::uint64_t seed, std::uint64_t trials,
              const std::string& format) {
    if (config_path.empty()) {
        throw config_error("sweep: --config is required");
    }
    std::ifstream f(config_path);
    if (!f) throw config_error("config: cannot open '" + config_path + "'");
    std::string text((std::istreambuf_iterator<char>(f)),
                     std::istreambuf_iterator<char>());
    const SectionMap m = parse_ini(text);
    RunConfig cfg = to_run_config(m);
    if (seed) cfg.mc.seed = seed;
    if (trials) cfg.mc.trials = trials;
    const SweepSpec spec = to_sweep_spec(m);
    const Table t = run_sweep(cfg, spec);
    std::ofstream file;
    std::ostream& os = open_out(file, out_path);
    format == "plotdata" ? emit_plotdata(t, os) : emit_csv(t, os);
    return 0;
}

int cmd_validate(const std::string& config_path, const std::string& out_path,
                 std::uint64_t seed, std::uint64_t trials) {
    system::McConfig mc;
    if (!config_path.empty()) mc = parse_config_file(config_path).mc;
    if (seed) mc.seed = seed;
    if (trials) mc.trials = trials;

    const auto report =
        harness::run_validation(default_validation_grid(), mc);
    std::ofstream file;
    std::ostream& os = open_out(file, out_path);
    harness::write_csv(report, os);
    std::cerr << harness::summary_text(report);
    return report.all_pass() ? 0 : 3;
}

int cmd_preset(const std::string& action, const std::string& name,
               const std::string& out_path, std::uint64_t seed,
               std::uint64_t trials, const std::string& format) {
    if (action == "list") {
        for (const auto& p : presets()) {
            std::cout << p.name << ": " << p.description << "\n";
        }
        return 0;
    }
    const Preset& p = find_preset(name);
    if (action == "show") {
        std::cout << p.text;
        return 0;
    }
    if (action == "run") {
        const Table t = run_preset(p, seed, trials);
        std::ofstream file;
        std::ostream& os = open_out(file, out_path);
        format == "plotdata" ? emit_plotdata(t, os) : emit_csv(t, os);
        return 0;
    }
    throw config_error("preset: unknown action '" + action +
                       "' (expected list, show, or run)");
}

} // namespace

std::vector<harness::ScenarioCase> default_validation_grid() {
    std::vector<harness::ScenarioCase> grid;
    struct Front {
        const char* tag;
        double eps;
        double phi_deg;
    };
    const Front fronts[] = {{"k10", 0.521, 3.0},
                            {"k20", 1.213, 3.0},
                            {"ideal", 1.0, 0.0}};
    for (const auto& fe : fronts) {
        for (int n : {2, 3}) {
            // pairs: (0 dB INR, boresight 0.3, rho 1) and
            //        (-5 dB INR, no boresight, rho 2)
            grid.push_back({std::string(fe.tag) + "_n" + std::to_string(n) +
                                "_inr0_b03_r1",
                            grid_scenario(fe.eps, fe.phi_deg, n, 0.0, 0.3, 1)});
            grid.push_back({std::string(fe.tag) + "_n" + std::to_string(n) +
                                "_inr-5_b0_r2",
                            grid_scenario(fe.eps, fe.phi_deg, n, -5.0, 0.0, 2)});
        }
    }
    return grid;
}

int run_cli(int argc, char** argv) {
    std::signal(SIGINT, handle_sigint);

    CLI::App app{"Performance analysis for an interference-limited mixed "
                 "RF/FSO two-way relay with front-end I/Q imbalance"};
    app.require_subcommand(1);

    std::string config_path, out_path, format = "csv";
    std::uint64_t seed = 0, trials = 0;
    auto add_common = [&](CLI::App* sub, bool with_format = true) {
        sub->add_option("--config", config_path, "scenario config file");
        sub->add_option("--out", out_path, "output path (default stdout)");
        sub->add_option("--seed", seed, "override the Monte Carlo seed");
        sub->add_option("--trials", trials, "override the Monte Carlo trials");
        if (with_format) {
            sub->add_option("--format", format, "csv|plotdata")
                ->check(CLI::IsMember({"csv", "plotdata"}));
        }
    };

    auto* eval = app.add_subcommand("eval", "evaluate a single scenario");
    add_common(eval);
    auto* sweep = app.add_subcommand("sweep", "run a parameter sweep");
    add_common(sweep);
    auto* validate =
        app.add_subcommand("validate", "closed-form vs Monte Carlo report");
    add_common(validate, false);

    auto* preset = app.add_subcommand("preset", "figure-reproduction presets");
    std::string action, name;
    preset->add_option("action", action, "list | show | run")->required();
    preset->add_option("name", name, "preset name (fig1, fig2, fig3)");
    add_common(preset);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (eval->parsed())
            return cmd_eval(config_path, out_path, seed, trials, format);
        if (sweep->parsed())
            return cmd_sweep(config_path, out_path, seed, trials, format);
        if (validate->parsed())
            return cmd_validate(config_path, out_path, seed, trials);
        if (preset->parsed())
            return cmd_preset(action, name, out_path, seed, trials, format);
    } catch (const config_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

} // namespace rfso::cli

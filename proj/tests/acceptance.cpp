// Acceptance suite: one pass/fail line per criterion, non-zero exit when any
// criterion fails. Runtime budgets from the build contract are enforced.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "rfso/analytics/sum_rate.hpp"
#include "rfso/cli/commands.hpp"
#include "rfso/specfun/bessel.hpp"
#include "rfso/specfun/meijer_g.hpp"

using namespace rfso;

namespace {

constexpr double kDeg = M_PI / 180.0;

int g_failures = 0;

void report(int number, const char* what, bool ok, double elapsed,
            double budget, const std::string& detail = "") {
    const bool in_budget = budget <= 0.0 || elapsed <= budget;
    const bool pass = ok && in_budget;
    if (!pass) ++g_failures;
    std::printf("%s criterion %2d (%5.1fs): %s%s%s\n", pass ? "PASS" : "FAIL",
                number, elapsed, what,
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!in_budget) {
        std::printf("     runtime %.1fs exceeded the %.0fs budget\n", elapsed,
                    budget);
    }
    std::fflush(stdout);
}

template <typename F>
void criterion(int number, const char* what, double budget, F&& body) {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    std::string detail;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    const double dt = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
    report(number, what, ok, dt, budget, detail);
}

double rel_err(double got, double want) {
    return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

channels::FsoLinkParams baseline_fso(double boresight, int rho, double mu) {
    channels::FsoLinkParams f;
    auto& t = f.turbulence;
    t.alpha1 = 2.0;
    t.beta1 = 2.0;
    t.omega1 = 1.0;
    t.alpha2 = 1.0;
    t.beta2 = 2.5;
    t.omega2 = 1.0;
    t.rationalize();
    f.pointing.boresight = boresight;
    f.pointing.jitter = 0.625;
    f.pointing.beam_waist = 2.5;
    f.pointing.aperture_radius = 0.1;
    f.rho = rho;
    f.mu_rho = mu;
    f.bessel_truncation = 10;
    return f;
}

system::ScenarioParams baseline_scenario(double snr) {
    system::ScenarioParams s;
    s.iqi = {1.213, 1.213, 3.0 * kDeg, 3.0 * kDeg};
    s.rf = {0.75, 0.75, snr};
    s.fso = baseline_fso(0.3, 1, snr);
    s.interference = {2, 1.5, 1.0};
    s.threshold = 1.0;
    return s;
}

// Picks a named numeric column from a preset table, keyed by (curve, x).
std::map<std::pair<std::string, double>, double> column(
    const cli::Table& t, const std::string& col) {
    std::size_t idx = 0;
    for (; idx < t.columns.size(); ++idx)
        if (t.columns[idx] == col) break;
    std::map<std::pair<std::string, double>, double> out;
    for (const auto& row : t.rows) {
        out[{row[0], std::stod(row[1])}] = std::stod(row[idx]);
    }
    return out;
}

bool check1(std::string& detail) {
    for (int i = 0; i < 30; ++i) {
        const double z = std::pow(10.0, -3.0 + 6.0 * i / 29.0);

        // exponential identity, compared in the log domain for deep tails
        const auto r = specfun::meijer_g_full({1, 0, {}, {0.0}}, z);
        if (r.sign != 1 || std::abs(r.log_abs + z) > 1e-8 * std::max(1.0, z)) {
            detail = "exp identity failed at z=" + std::to_string(z);
            return false;
        }
        // 2 K_v(2 sqrt(z))
        const double v = 0.75;
        const auto rk =
            specfun::meijer_g_full({2, 0, {}, {v / 2.0, -v / 2.0}}, z);
        const double kref = specfun::bessel_k(v, 2.0 * std::sqrt(z));
        if (std::abs(rk.sign * std::exp(rk.log_abs) - 2.0 * kref) >
            1e-8 * 2.0 * kref) {
            detail = "Bessel identity failed at z=" + std::to_string(z);
            return false;
        }
        // z / (1 + z)
        if (rel_err(specfun::meijer_g({1, 1, {1.0}, {1.0}}, z),
                    z / (1.0 + z)) > 1e-8) {
            detail = "rational identity failed at z=" + std::to_string(z);
            return false;
        }
    }
    return true;
}

bool check2(std::string& detail) {
    double worst = 0.0;
    for (double b : {0.0, 0.3}) {
        const auto f = baseline_fso(b, 2, 100.0);
        const double a0 = f.pointing.a0();
        for (int i = 0; i < 20; ++i) {
            // log-spaced irradiance points across the bulk of the support
            const double x = a0 * std::pow(10.0, -0.5 + 1.58 * i / 19.0);
            const double oracle = testutil::integrate_upper(
                [&](double ia) {
                    return channels::pointing_error_pdf(f.pointing, x / ia) /
                           ia *
                           channels::dgg_atmospheric_pdf(f.turbulence, ia);
                },
                x / a0, 1e-8);
            worst = std::max(worst,
                             rel_err(channels::fso_combined_pdf(f, x), oracle));
        }
    }
    detail = "worst rel err " + std::to_string(worst);
    return worst <= 1e-3;
}

bool check3(std::string& detail) {
    for (int rho : {1, 2}) {
        const auto f = baseline_fso(0.3, rho, 100.0);
        util::Rng rng(2024 + rho);
        std::vector<double> sample(1000000);
        for (auto& s : sample) s = channels::sample_fso_snr(f, rng);
        const double d = testutil::ks_distance_interp(
            sample, [&](double g) { return channels::fso_snr_cdf(f, g); },
            1024);
        if (d > testutil::ks_band_99(sample.size())) {
            detail = "KS " + std::to_string(d) + " at rho " +
                     std::to_string(rho);
            return false;
        }
    }
    return true;
}

bool check4(std::string& detail) {
    system::McConfig cfg;
    cfg.trials = 1000000;
    cfg.seed = 1;
    const auto rep =
        harness::run_validation(cli::default_validation_grid(), cfg);
    double worst = 0.0;
    for (const auto& r : rep.rows) {
        if (r.metric != "outage") continue;
        if (!r.error.empty() || std::abs(r.z_score) > 3.0) {
            detail = r.scenario_id + ": z=" + std::to_string(r.z_score) +
                     " " + r.error;
            return false;
        }
        worst = std::max(worst, std::abs(r.z_score));
    }
    detail = "worst |z| " + std::to_string(worst);
    return true;
}

bool check5(std::string& detail) {
    const auto t = cli::run_preset(cli::find_preset("fig1"));
    const auto outage = column(t, "outage_exact");
    for (const auto& [key, p10] : outage) {
        if (key.first != "kappa10") continue;
        const double x = key.second;
        const double p15 = outage.at({"kappa15", x});
        const double p20 = outage.at({"kappa20", x});
        const double pid = outage.at({"no_iqi", x});
        if (!(p10 > p15 && p15 > p20 && p20 > pid)) {
            detail = "ordering broken at snr_db=" + std::to_string(x);
            return false;
        }
    }
    return true;
}

bool check6(std::string& detail) {
    const auto t = cli::run_preset(cli::find_preset("fig2"));
    const auto outage = column(t, "outage_exact");
    for (const auto& [key, v] : outage) {
        if (key.first != "n2_inr-5db") continue;
        const double x = key.second;
        for (const char* n : {"n2", "n3"}) {
            const double m5 = outage.at({std::string(n) + "_inr-5db", x});
            const double m2 = outage.at({std::string(n) + "_inr-2db", x});
            const double m0 = outage.at({std::string(n) + "_inr0db", x});
            if (!(m5 <= m2 && m2 <= m0)) {
                detail = std::string("INR ordering broken for ") + n +
                         " at snr_db=" + std::to_string(x);
                return false;
            }
        }
        for (const char* inr : {"_inr0db", "_inr-2db", "_inr-5db"}) {
            if (outage.at({std::string("n2") + inr, x}) >
                outage.at({std::string("n3") + inr, x})) {
                detail = std::string("count ordering broken for") + inr +
                         " at snr_db=" + std::to_string(x);
                return false;
            }
        }
    }
    return true;
}

bool check7(std::string& detail) {
    const auto t = cli::run_preset(cli::find_preset("fig3"));
    const auto exact = column(t, "asr_exact");
    const auto mc = column(t, "asr_mc");
    const auto se = column(t, "asr_mc_stderr");
    for (const auto& [key, ex] : exact) {
        const double gap = std::abs(ex - mc.at(key));
        if (gap > 3.0 * se.at(key) + 0.02 * std::abs(ex)) {
            detail = key.first + " snr_db=" + std::to_string(key.second) +
                     " gap " + std::to_string(gap);
            return false;
        }
        // non-increasing in interferer count and strength
        const double x = key.second;
        if (key.first == "n2_inr0db") {
            if (exact.at({"n3_inr0db", x}) > ex ||
                exact.at({"n2_inr-5db", x}) < ex) {
                detail = "interference ordering broken at snr_db=" +
                         std::to_string(x);
                return false;
            }
        }
    }
    return true;
}

bool check8(std::string& detail) {
    double prev_out = 1e9, prev_asr = 1e9;
    double last_out = 0.0, last_asr = 0.0;
    for (double snr_db = 20.0; snr_db <= 50.0; snr_db += 10.0) {
        const auto s = baseline_scenario(std::pow(10.0, snr_db / 10.0));
        const auto out = analytics::outage_exact(s);
        const auto asr = analytics::asr_exact(s);
        const double go = rel_err(out.asymptotic, out.exact);
        const double ga = rel_err(asr.asymptotic, asr.exact);
        if (go >= prev_out || ga >= prev_asr) {
            detail = "gap not shrinking at snr_db=" + std::to_string(snr_db);
            return false;
        }
        prev_out = go;
        prev_asr = ga;
        last_out = go;
        last_asr = ga;
    }
    detail = "50 dB gaps: outage " + std::to_string(last_out) + ", asr " +
             std::to_string(last_asr);
    return last_out <= 0.05 && last_asr <= 0.05;
}

bool check9(std::string& detail) {
    std::vector<harness::ScenarioCase> grid{
        {"mid", baseline_scenario(100.0)}};
    system::McConfig cfg;
    cfg.trials = 400000;
    if (!harness::run_validation(grid, cfg).all_pass()) {
        detail = "unperturbed baseline failed";
        return false;
    }
    const double ai = grid[0].scenario.interference.shape();
    const analytics::Perturbation muts[] = {
        {1.1, 0.0, 1.0},       // CDF argument constant x1.1
        {1.0, 0.1 * ai, 1.0},  // interference parameter entry +10%
        {1.0, 0.0, 1.1},       // series coefficients x1.1
    };
    const char* names[] = {"argument constant", "parameter entry",
                           "series coefficient"};
    for (int i = 0; i < 3; ++i) {
        if (harness::run_validation(grid, cfg, muts[i]).all_pass()) {
            detail = std::string("mutation not detected: ") + names[i];
            return false;
        }
    }
    return true;
}

bool check10(std::string& detail) {
    system::McConfig cfg;
    cfg.trials = 200000;
    cfg.seed = 7;
    const auto grid = cli::default_validation_grid();
    const std::string a = harness::to_csv(harness::run_validation(grid, cfg));
    const std::string b = harness::to_csv(harness::run_validation(grid, cfg));
    if (a != b) {
        detail = "reports differ between identical runs";
        return false;
    }
    return true;
}

} // namespace

int main() {
    criterion(1, "Meijer-G elementary identities on the log grid", 10.0,
              check1);
    criterion(2, "composite-irradiance PDF vs conditioning-integral oracle",
              120.0, check2);
    criterion(3, "optical SNR CDF within the KS 99% band, both demodulations",
              120.0, check3);
    criterion(4, "outage closed form within 3 sigma of Monte Carlo, 12-grid",
              600.0, check4);
    criterion(5, "fig1 sweep: strict outage ordering in rejection ratio", 0.0,
              check5);
    criterion(6, "fig2 sweep: outage ordering in INR and interferer count",
              0.0, check6);
    criterion(7, "fig3 sweep: sum rate matches Monte Carlo, interference "
                 "monotone", 0.0, check7);
    criterion(8, "asymptotics converge to exact on the 20-50 dB grid", 0.0,
              check8);
    criterion(9, "mutated constants are caught by the validation harness",
              0.0, check9);
    criterion(10, "validation report bytes identical across repeat runs", 0.0,
              check10);

    if (g_failures > 0) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}

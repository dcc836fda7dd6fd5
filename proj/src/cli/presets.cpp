#include "rfso/cli/presets.hpp"

namespace rfso::cli {

namespace {

// Shared physical baseline. Lines marked "DEFAULT (assumed)" are values we
// chose; the rest are fixed inputs of the corresponding study.
const char* kCommonBody = R"(
[rf]
a = 0.75                      # DEFAULT (assumed)
v = 0.75                      # DEFAULT (assumed)
mean_snr_db = 10              # swept

[fso]
rho = 1                       # DEFAULT (assumed)
mu_db = 10                    # swept (equal-hop convention)
bessel_truncation = 10

[fso.turbulence]              # moderate-turbulence regime
alpha1 = 2.0                  # DEFAULT (assumed)
beta1 = 2.0                   # DEFAULT (assumed)
omega1 = 1.0                  # DEFAULT (assumed)
alpha2 = 1.0                  # DEFAULT (assumed)
beta2 = 2.5                   # DEFAULT (assumed)
omega2 = 1.0                  # DEFAULT (assumed)

[fso.pointing]
boresight = 0.3               # DEFAULT (assumed)
jitter = 0.625                # DEFAULT (assumed)
beam_waist = 2.5              # DEFAULT (assumed)
aperture_radius = 0.1         # DEFAULT (assumed)

[system]
threshold_db = 0              # DEFAULT (assumed)

[mc]
trials = 1000000
seed = 1
batch = 256
parallel = true
)";

std::string fig1_text() {
    std::string s = "# fig1: outage vs equal-hop SNR for front-end "
                    "rejection ratios 10/15/20 dB and the ideal front-end\n"
                    "[iqi]\n"
                    "epsilon_t = 0.521             # per-curve override\n"
                    "epsilon_r = 0.521             # per-curve override\n"
                    "phi_t_deg = 3\n"
                    "phi_r_deg = 3\n";
    s += kCommonBody;
    s += "\n[interference]\n"
         "count = 2                     # DEFAULT (assumed)\n"
         "m = 1.5                       # DEFAULT (assumed)\n"
         "mean_inr_db = 0               # DEFAULT (assumed)\n"
         "\n[sweep]\n"
         "variable = snr_db\n"
         "from = 10\n"
         "to = 40\n"
         "step = 5\n"
         "outputs = outage_exact, outage_asymptotic\n";
    return s;
}

std::string fig2_text() {
    std::string s = "# fig2: outage vs equal-hop SNR for interferer counts "
                    "{2, 3} and mean INR {0, -2, -5} dB\n"
                    "[iqi]\n"
                    "epsilon_t = 1.213             # 20 dB rejection; DEFAULT (assumed)\n"
                    "epsilon_r = 1.213             # 20 dB rejection; DEFAULT (assumed)\n"
                    "phi_t_deg = 3\n"
                    "phi_r_deg = 3\n";
    s += kCommonBody;
    s += "\n[interference]\n"
         "count = 2                     # per-curve override\n"
         "m = 2.3\n"
         "mean_inr_db = 0               # per-curve override\n"
         "\n[sweep]\n"
         "variable = snr_db\n"
         "from = 10\n"
         "to = 40\n"
         "step = 5\n"
         "outputs = outage_exact, outage_asymptotic\n";
    return s;
}

std::string fig3_text() {
    std::string s = "# fig3: sum rate vs equal-hop SNR, varying interferer "
                    "count and strength, with Monte Carlo verification\n"
                    "[iqi]\n"
                    "epsilon_t = 1.213             # 20 dB rejection; DEFAULT (assumed)\n"
                    "epsilon_r = 1.213             # 20 dB rejection; DEFAULT (assumed)\n"
                    "phi_t_deg = 3\n"
                    "phi_r_deg = 3\n";
    s += kCommonBody;
    s += "\n[interference]\n"
         "count = 2                     # per-curve override\n"
         "m = 2.3\n"
         "mean_inr_db = 0               # per-curve override\n"
         "\n[sweep]\n"
         "variable = snr_db\n"
         "from = 10\n"
         "to = 40\n"
         "step = 10\n"
         "outputs = asr_exact, asr_asymptotic, asr_mc\n";
    return s;
}

std::vector<Preset> build_presets() {
    std::vector<Preset> out;

    Preset f1;
    f1.name = "fig1";
    f1.description =
        "Outage vs equal-hop SNR: front-end rejection 10/15/20 dB plus the "
        "ideal front-end";
    f1.text = fig1_text();
    f1.curves = {
        {"kappa10", {{"iqi.epsilon_t", "0.521"}, {"iqi.epsilon_r", "0.521"}}},
        {"kappa15", {{"iqi.epsilon_t", "1.425"}, {"iqi.epsilon_r", "1.425"}}},
        {"kappa20", {{"iqi.epsilon_t", "1.213"}, {"iqi.epsilon_r", "1.213"}}},
        {"no_iqi",
         {{"iqi.epsilon_t", "1"},
          {"iqi.epsilon_r", "1"},
          {"iqi.phi_t_deg", "0"},
          {"iqi.phi_r_deg", "0"}}},
    };
    out.push_back(std::move(f1));

    Preset f2;
    f2.name = "fig2";
    f2.description =
        "Outage vs equal-hop SNR: interferer count {2,3} x mean INR "
        "{0,-2,-5} dB at shaping 2.3";
    f2.text = fig2_text();
    for (const char* n : {"2", "3"}) {
        for (const char* inr : {"0", "-2", "-5"}) {
            PresetCurve c;
            c.label = std::string("n") + n + "_inr" + inr + "db";
            c.overrides = {{"interference.count", n},
                           {"interference.mean_inr_db", inr}};
            f2.curves.push_back(std::move(c));
        }
    }
    out.push_back(std::move(f2));

    Preset f3;
    f3.name = "fig3";
    f3.description =
        "Sum rate vs equal-hop SNR: interferer count {2,3} x mean INR "
        "{0,-5} dB, with Monte Carlo verification";
    f3.text = fig3_text();
    for (const char* n : {"2", "3"}) {
        for (const char* inr : {"0", "-5"}) {
            PresetCurve c;
            c.label = std::string("n") + n + "_inr" + inr + "db";
            c.overrides = {{"interference.count", n},
                           {"interference.mean_inr_db", inr}};
            f3.curves.push_back(std::move(c));
        }
    }
    out.push_back(std::move(f3));
    return out;
}

} // namespace

const std::vector<Preset>& presets() {
    static const std::vector<Preset> p = build_presets();
    return p;
}

const Preset& find_preset(const std::string& name) {
    for (const auto& p : presets()) {
        if (p.name == name) return p;
    }
    throw config_error("preset: unknown preset '" + name +
                       "' (available: fig1, fig2, fig3)");
}

Table run_preset(const Preset& p, std::uint64_t seed_override,
                 std::uint64_t trials_override) {
    Table combined;
    for (const auto& curve : p.curves) {
        SectionMap m = parse_ini(p.text);
        for (const auto& [k, v] : curve.overrides) set_key(m, k, v);
        // _db/_lin exclusivity: an override in the other spelling must
        // replace, not join, the preset's value.
        for (auto& [k, v] : curve.overrides) {
            const auto dot = k.rfind('.');
            const std::string sec = k.substr(0, dot);
            std::string base = k.substr(dot + 1);
            auto strip = [&](const char* suf) {
                const std::string s(suf);
                if (base.size() > s.size() &&
                    base.compare(base.size() - s.size(), s.size(), s) == 0) {
                    const std::string stem = base.substr(0, base.size() - s.size());
                    m[sec].erase(stem + (s == "_db" ? "_lin" : "_db"));
                }
            };
            strip("_db");
            strip("_lin");
        }
        RunConfig cfg = to_run_config(m);
        if (seed_override) cfg.mc.seed = seed_override;
        if (trials_override) cfg.mc.trials = trials_override;
        const SweepSpec spec = to_sweep_spec(m);
        const Table t = run_sweep(cfg, spec);
        if (combined.columns.empty()) {
            combined.columns.push_back("curve");
            combined.columns.insert(combined.columns.end(), t.columns.begin(),
                                    t.columns.end());
        }
        for (const auto& row : t.rows) {
            std::vector<std::string> r;
            r.push_back(curve.label);
            r.insert(r.end(), row.begin(), row.end());
            combined.rows.push_back(std::move(r));
        }
    }
    return combined;
}

} // namespace rfso::cli

#include "rfso/cli/config.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "rfso/analytics/sum_rate.hpp"

namespace rfso::cli {

namespace {

constexpr double kDegToRad = M_PI / 180.0;

std::atomic<bool> g_interrupt{false};

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double to_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw config_error("config: key '" + key + "' has non-numeric value '" +
                           v + "'");
    }
}

std::uint64_t to_u64(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const unsigned long long d = std::stoull(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw config_error("config: key '" + key +
                           "' has non-integer value '" + v + "'");
    }
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw config_error("config: key '" + key + "' has non-boolean value '" +
                       v + "'");
}

// Consuming view over one section: reads erase their key so leftovers can be
// reported as unknown.
class Section {
public:
    Section(SectionMap& m, std::string name) : name_(std::move(name)) {
        auto it = m.find(name_);
        if (it != m.end()) kv_ = &it->second;
    }

    bool take(const std::string& key, std::string& out) {
        if (!kv_) return false;
        auto it = kv_->find(key);
        if (it == kv_->end()) return false;
        out = it->second;
        kv_->erase(it);
        return true;
    }

    void number(const std::string& key, double& out) {
        std::string v;
        if (take(key, v)) out = to_double(name_ + "." + key, v);
    }
    void integer(const std::string& key, int& out) {
        std::string v;
        if (take(key, v))
            out = static_cast<int>(to_u64(name_ + "." + key, v));
    }
    void u64(const std::string& key, std::uint64_t& out) {
        std::string v;
        if (take(key, v)) out = to_u64(name_ + "." + key, v);
    }
    void boolean(const std::string& key, bool& out) {
        std::string v;
        if (take(key, v)) out = to_bool(name_ + "." + key, v);
    }

    // Accepts "<base>_db" or "<base>_lin", rejecting the conflicting pair.
    void scaled(const std::string& base, double& out) {
        std::string db, lin;
        const bool has_db = take(base + "_db", db);
        const bool has_lin = take(base + "_lin", lin);
        if (has_db && has_lin) {
            throw config_error("config: both " + name_ + "." + base +
                               "_db and _lin given");
        }
        if (has_db) out = std::pow(10.0, to_double(name_ + "." + base + "_db", db) / 10.0);
        if (has_lin) out = to_double(name_ + "." + base + "_lin", lin);
    }

private:
    std::string name_;
    std::map<std::string, std::string>* kv_ = nullptr;
};

void reject_leftovers(const SectionMap& m) {
    for (const auto& [sec, kv] : m) {
        if (!kv.empty()) {
            throw config_error("config: unknown key '" + sec + "." +
                               kv.begin()->first + "'");
        }
    }
}

// Documented defaults: the moderate-turbulence baseline used across the
// test-suite; every field can be overridden from the config text.
RunConfig default_config() {
    RunConfig c;
    c.scenario.iqi = {1.0, 1.0, 0.0, 0.0};
    c.scenario.rf = {0.75, 0.75, 10.0};
    auto& t = c.scenario.fso.turbulence;
    t.alpha1 = 2.0;
    t.beta1 = 2.0;
    t.omega1 = 1.0;
    t.alpha2 = 1.0;
    t.beta2 = 2.5;
    t.omega2 = 1.0;
    t.rationalize();
    auto& p = c.scenario.fso.pointing;
    p.boresight = 0.0;
    p.jitter = 0.625;
    p.beam_waist = 2.5;
    p.aperture_radius = 0.1;
    c.scenario.fso.rho = 1;
    c.scenario.fso.mu_rho = 10.0;
    c.scenario.fso.bessel_truncation = 10;
    c.scenario.interference = {2, 1.5, 1.0};
    c.scenario.threshold = 1.0;
    return c;
}

} // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

SectionMap parse_ini(const std::string& text) {
    SectionMap m;
    std::string section;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find_first_of("#;");
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw config_error("config line " + std::to_string(lineno) +
                                   ": unterminated section header");
            }
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty()) {
                throw config_error("config line " + std::to_string(lineno) +
                                   ": empty section name");
            }
            m[section]; // register even if empty
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw config_error("config line " + std::to_string(lineno) +
                               ": expected 'key = value'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            throw config_error("config line " + std::to_string(lineno) +
                               ": empty key");
        }
        if (section.empty()) {
            throw config_error("config line " + std::to_string(lineno) +
                               ": key outside any [section]");
        }
        if (!m[section].emplace(key, value).second) {
            throw config_error("config line " + std::to_string(lineno) +
                               ": duplicate key '" + section + "." + key + "'");
        }
    }
    return m;
}

void set_key(SectionMap& m, const std::string& dotted_key,
             const std::string& value) {
    const auto dot = dotted_key.rfind('.');
    if (dot == std::string::npos) {
        throw config_error("override '" + dotted_key +
                           "' is not of the form section.key");
    }
    const std::string section = dotted_key.substr(0, dot);
    const std::string key = dotted_key.substr(dot + 1);
    m[section][key] = value;
}

RunConfig to_run_config(const SectionMap& input) {
    SectionMap m = input;
    m.erase("sweep"); // handled by to_sweep_spec
    RunConfig c = default_config();

    Section iqi(m, "iqi");
    double phi_t_deg = c.scenario.iqi.phi_t / kDegToRad;
    double phi_r_deg = c.scenario.iqi.phi_r / kDegToRad;
    iqi.number("epsilon_t", c.scenario.iqi.epsilon_t);
    iqi.number("epsilon_r", c.scenario.iqi.epsilon_r);
    iqi.number("phi_t_deg", phi_t_deg);
    iqi.number("phi_r_deg", phi_r_deg);
    c.scenario.iqi.phi_t = phi_t_deg * kDegToRad;
    c.scenario.iqi.phi_r = phi_r_deg * kDegToRad;

    Section rf(m, "rf");
    rf.number("a", c.scenario.rf.a);
    rf.number("v", c.scenario.rf.v);
    rf.scaled("mean_snr", c.scenario.rf.mean_snr);

    Section fso(m, "fso");
    fso.integer("rho", c.scenario.fso.rho);
    fso.scaled("mu", c.scenario.fso.mu_rho);
    fso.integer("bessel_truncation", c.scenario.fso.bessel_truncation);

    Section turb(m, "fso.turbulence");
    auto& t = c.scenario.fso.turbulence;
    turb.number("alpha1", t.alpha1);
    turb.number("beta1", t.beta1);
    turb.number("omega1", t.omega1);
    turb.number("alpha2", t.alpha2);
    turb.number("beta2", t.beta2);
    turb.number("omega2", t.omega2);
    t.rationalize();

    Section pt(m, "fso.pointing");
    auto& p = c.scenario.fso.pointing;
    pt.number("boresight", p.boresight);
    pt.number("jitter", p.jitter);
    pt.number("beam_waist", p.beam_waist);
    pt.number("aperture_radius", p.aperture_radius);

    Section intf(m, "interference");
    intf.integer("count", c.scenario.interference.count);
    intf.number("m", c.scenario.interference.m);
    intf.scaled("mean_inr", c.scenario.interference.mean_inr);

    Section sys(m, "system");
    sys.scaled("threshold", c.scenario.threshold);

    Section mc(m, "mc");
    mc.u64("trials", c.mc.trials);
    mc.u64("seed", c.mc.seed);
    mc.u64("batch", c.mc.batch);
    mc.boolean("parallel", c.mc.parallel);

    reject_leftovers(m);
    try {
        c.scenario.validate();
        c.mc.validate();
    } catch (const std::exception& e) {
        throw config_error(std::string("config: invalid values: ") + e.what());
    }
    return c;
}

bool has_sweep(const SectionMap& m) { return m.count("sweep") > 0; }

SweepSpec to_sweep_spec(const SectionMap& input) {
    SectionMap m;
    auto it = input.find("sweep");
    if (it == input.end()) throw config_error("config: missing [sweep] section");
    m["sweep"] = it->second;

    SweepSpec s;
    Section sw(m, "sweep");
    std::string v;
    if (sw.take("variable", v)) s.variable = v;
    sw.number("from", s.from);
    sw.number("to", s.to);
    sw.number("step", s.step);
    if (sw.take("outputs", v)) {
        std::istringstream is(v);
        std::string tok;
        while (std::getline(is, tok, ',')) {
            tok = trim(tok);
            if (!tok.empty()) s.outputs.push_back(tok);
        }
    }
    reject_leftovers(m);
    s.validate();
    return s;
}

void SweepSpec::validate() const {
    static const char* kVars[] = {"snr_db", "inr_db", "threshold_db",
                                  "boresight", "count"};
    bool known = false;
    for (const char* k : kVars) known = known || variable == k;
    if (!known) {
        throw config_error("sweep: unknown variable '" + variable + "'");
    }
    if (!(step > 0.0)) throw config_error("sweep: step must be > 0");
    if (to < from) throw config_error("sweep: empty range (to < from)");
    static const char* kOuts[] = {"outage_exact", "outage_asymptotic",
                                  "outage_mc",    "asr_exact",
                                  "asr_asymptotic", "asr_mc"};
    if (outputs.empty()) throw config_error("sweep: no outputs requested");
    for (const auto& o : outputs) {
        bool ok = false;
        for (const char* k : kOuts) ok = ok || o == k;
        if (!ok) throw config_error("sweep: unknown output '" + o + "'");
    }
}

std::vector<double> SweepSpec::grid() const {
    std::vector<double> g;
    for (double x = from; x <= to + 1e-9 * step; x += step) g.push_back(x);
    return g;
}

RunConfig parse_config(const std::string& text) {
    return to_run_config(parse_ini(text));
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw config_error("config: cannot open '" + path + "'");
    std::ostringstream os;
    os << f.rdbuf();
    return parse_config(os.str());
}

std::string emit_config(const RunConfig& c) {
    std::ostringstream os;
    const auto& s = c.scenario;
    os << "[iqi]\n";
    os << "epsilon_t = " << format_double(s.iqi.epsilon_t) << "\n";
    os << "epsilon_r = " << format_double(s.iqi.epsilon_r) << "\n";
    os << "phi_t_deg = " << format_double(s.iqi.phi_t / kDegToRad) << "\n";
    os << "phi_r_deg = " << format_double(s.iqi.phi_r / kDegToRad) << "\n";
    os << "\n[rf]\n";
    os << "a = " << format_double(s.rf.a) << "\n";
    os << "v = " << format_double(s.rf.v) << "\n";
    os << "mean_snr_lin = " << format_double(s.rf.mean_snr) << "\n";
    os << "\n[fso]\n";
    os << "rho = " << s.fso.rho << "\n";
    os << "mu_lin = " << format_double(s.fso.mu_rho) << "\n";
    os << "bessel_truncation = " << s.fso.bessel_truncation << "\n";
    const auto& t = s.fso.turbulence;
    os << "\n[fso.turbulence]\n";
    os << "alpha1 = " << format_double(t.alpha1) << "\n";
    os << "beta1 = " << format_double(t.beta1) << "\n";
    os << "omega1 = " << format_double(t.omega1) << "\n";
    os << "alpha2 = " << format_double(t.alpha2) << "\n";
    os << "beta2 = " << format_double(t.beta2) << "\n";
    os << "omega2 = " << format_double(t.omega2) << "\n";
    const auto& p = s.fso.pointing;
    os << "\n[fso.pointing]\n";
    os << "boresight = " << format_double(p.boresight) << "\n";
    os << "jitter = " << format_double(p.jitter) << "\n";
    os << "beam_waist = " << format_double(p.beam_waist) << "\n";
    os << "aperture_radius = " << format_double(p.aperture_radius) << "\n";
    os << "\n[interference]\n";
    os << "count = " << s.interference.count << "\n";
    os << "m = " << format_double(s.interference.m) << "\n";
    os << "mean_inr_lin = " << format_double(s.interference.mean_inr) << "\n";
    os << "\n[system]\n";
    os << "threshold_lin = " << format_double(s.threshold) << "\n";
    os << "\n[mc]\n";
    os << "trials = " << c.mc.trials << "\n";
    os << "seed = " << c.mc.seed << "\n";
    os << "batch = " << c.mc.batch << "\n";
    os << "parallel = " << (c.mc.parallel ? "true" : "false") << "\n";
    return os.str();
}

std::string emit_sweep(const SweepSpec& s) {
    std::ostringstream os;
    os << "[sweep]\n";
    os << "variable = " << s.variable << "\n";
    os << "from = " << format_double(s.from) << "\n";
    os << "to = " << format_double(s.to) << "\n";
    os << "step = " << format_double(s.step) << "\n";
    os << "outputs = ";
    for (std::size_t i = 0; i < s.outputs.size(); ++i) {
        if (i) os << ", ";
        os << s.outputs[i];
    }
    os << "\n";
    return os.str();
}

namespace {

void apply_variable(RunConfig& c, const std::string& var, double x) {
    if (var == "snr_db") {
        // equal-hop convention: both hops share the mean electrical SNR
        const double lin = std::pow(10.0, x / 10.0);
        c.scenario.rf.mean_snr = lin;
        c.scenario.fso.mu_rho = lin;
    } else if (var == "inr_db") {
        c.scenario.interference.mean_inr = std::pow(10.0, x / 10.0);
    } else if (var == "threshold_db") {
        c.scenario.threshold = std::pow(10.0, x / 10.0);
    } else if (var == "boresight") {
        c.scenario.fso.pointing.boresight = x;
    } else if (var == "count") {
        c.scenario.interference.count = static_cast<int>(std::lround(x));
    }
}

} // namespace

Table run_sweep(const RunConfig& base, const SweepSpec& spec) {
    spec.validate();
    Table t;
    t.columns.push_back(spec.variable);
    bool want_outage_closed = false, want_asr_closed = false;
    for (const auto& o : spec.outputs) {
        t.columns.push_back(o);
        if (o == "outage_mc" || o == "asr_mc")
            t.columns.push_back(o + "_stderr");
        if (o == "outage_exact" || o == "outage_asymptotic")
            want_outage_closed = true;
        if (o == "asr_exact" || o == "asr_asymptotic") want_asr_closed = true;
    }
    t.columns.push_back("error");

    for (double x : spec.grid()) {
        if (g_interrupt.load()) break;
        RunConfig c = base;
        apply_variable(c, spec.variable, x);
        std::vector<std::string> row;
        row.push_back(format_double(x));
        std::string error;
        analytics::OutageResult out{};
        analytics::AsrResult asr{};
        system::McEstimate mc_out{}, mc_asr_est{};
        try {
            if (want_outage_closed) out = analytics::outage_exact(c.scenario);
            if (want_asr_closed) asr = analytics::asr_exact(c.scenario);
            for (const auto& o : spec.outputs) {
                if (o == "outage_mc")
                    mc_out = system::mc_outage(c.scenario, c.mc);
                if (o == "asr_mc") mc_asr_est = system::mc_asr(c.scenario, c.mc);
            }
        } catch (const std::exception& e) {
            error = e.what();
        }
        const double nan = std::numeric_limits<double>::quiet_NaN();
        for (const auto& o : spec.outputs) {
            double v = nan, se = nan;
            if (error.empty()) {
                if (o == "outage_exact") v = out.exact;
                if (o == "outage_asymptotic") v = out.asymptotic;
                if (o == "asr_exact") v = asr.exact;
                if (o == "asr_asymptotic") v = asr.asymptotic;
                if (o == "outage_mc") v = mc_out.value, se = mc_out.stderr_;
                if (o == "asr_mc") v = mc_asr_est.value, se = mc_asr_est.stderr_;
            }
            row.push_back(format_double(v));
            if (o == "outage_mc" || o == "asr_mc")
                row.push_back(format_double(se));
        }
        row.push_back(error);
        t.rows.push_back(std::move(row));
    }
    return t;
}

void emit_csv(const Table& t, std::ostream& os) {
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
        if (i) os << ',';
        os << t.columns[i];
    }
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) os << ',';
            os << row[i];
        }
        os << '\n';
    }
    if (g_interrupt.load()) os << "# truncated: interrupted before completion\n";
}

void emit_plotdata(const Table& t, std::ostream& os) {
    os << '#';
    for (const auto& c : t.columns) os << ' ' << c;
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) os << ' ';
            std::string cell = row[i];
            for (auto& ch : cell)
                if (ch == ' ') ch = '_';
            os << (cell.empty() ? "-" : cell);
        }
        os << '\n';
    }
    if (g_interrupt.load()) os << "# truncated: interrupted before completion\n";
}

void write_table(const Table& t, const std::string& path,
                 const std::string& format) {
    std::ofstream f(path);
    if (!f) throw config_error("output: cannot open '" + path + "'");
    if (format == "plotdata") {
        emit_plotdata(t, f);
    } else if (format == "csv") {
        emit_csv(t, f);
    } else {
        throw config_error("output: unknown format '" + format + "'");
    }
    if (!f.good()) throw config_error("output: write failed for '" + path + "'");
}

namespace detail {
void request_interrupt() { g_interrupt.store(true); }
} // namespace detail

} // namespace rfso::cli

#include "rfso/harness/validation.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "rfso/analytics/sum_rate.hpp"

namespace rfso::harness {

namespace {

// Stable 64-bit FNV-1a so row seeds do not depend on the standard library's
// std::hash implementation.
std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Relative ASR tolerance on top of the 3-sigma band: the log-expectation
// estimator converges slower than the binomial counter.
constexpr double kAsrRelBand = 0.02;

ValidationRow score(const std::string& id, const std::string& metric,
                    double analytic, double asymptotic,
                    const system::McEstimate& mc, double rel_band) {
    ValidationRow row;
    row.scenario_id = id;
    row.metric = metric;
    row.analytic = analytic;
    row.asymptotic = asymptotic;
    row.mc_estimate = mc.value;
    row.mc_stderr = mc.stderr_;
    const double diff = analytic - mc.value;
    row.z_score = mc.stderr_ > 0.0 ? diff / mc.stderr_
                                   : (diff == 0.0 ? 0.0 : INFINITY);
    row.pass = std::abs(diff) <=
               3.0 * mc.stderr_ + rel_band * std::abs(analytic);
    return row;
}

ValidationRow failed_row(const std::string& id, const std::string& metric,
                         const std::string& what) {
    ValidationRow row;
    row.scenario_id = id;
    row.metric = metric;
    row.analytic = row.asymptotic = row.mc_estimate = row.mc_stderr =
        row.z_score = std::numeric_limits<double>::quiet_NaN();
    row.pass = false;
    row.error = what;
    return row;
}

} // namespace

bool ValidationReport::all_pass() const {
    for (const auto& r : rows)
        if (!r.pass) return false;
    return true;
}

ValidationReport run_validation(const std::vector<ScenarioCase>& grid,
                                const system::McConfig& cfg,
                                const analytics::Perturbation& mut) {
    if (grid.empty()) {
        throw std::invalid_argument("run_validation: empty scenario grid");
    }
    cfg.validate();
    ValidationReport rep;
    rep.seed = cfg.seed;
    rep.trials = cfg.trials;
#if defined(RFSO_COMMIT_STAMP)
    rep.commit_stamp = RFSO_COMMIT_STAMP;
#else
    rep.commit_stamp = "unknown";
#endif
    rep.rows.resize(2 * grid.size());

    // Rows are independent; the Monte Carlo engine parallelizes internally,
    // so the grid loop stays serial and the row order is fixed.
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto& gc = grid[i];
        system::McConfig row_cfg = cfg;
        row_cfg.seed = cfg.seed ^ fnv1a(gc.id);

        try {
            const auto exact = analytics::outage_exact(gc.scenario, mut);
            const auto mc = system::mc_outage(gc.scenario, row_cfg);
            rep.rows[2 * i] = score(gc.id, "outage", exact.exact,
                                    exact.asymptotic, mc, 0.0);
        } catch (const std::exception& e) {
            rep.rows[2 * i] = failed_row(gc.id, "outage", e.what());
        }
        try {
            const auto exact = analytics::asr_exact(gc.scenario, mut);
            const auto mc = system::mc_asr(gc.scenario, row_cfg);
            rep.rows[2 * i + 1] = score(gc.id, "asr", exact.exact,
                                        exact.asymptotic, mc, kAsrRelBand);
        } catch (const std::exception& e) {
            rep.rows[2 * i + 1] = failed_row(gc.id, "asr", e.what());
        }
    }
    return rep;
}

void write_csv(const ValidationReport& report, std::ostream& os) {
    os << "# seed=" << report.seed << "\n";
    os << "# trials=" << report.trials << "\n";
    os << "# commit=" << report.commit_stamp << "\n";
    os << "scenario_id,metric,analytic,asymptotic,mc_estimate,mc_stderr,"
          "z_score,pass,error\n";
    for (const auto& r : report.rows) {
        os << r.scenario_id << ',' << r.metric << ',' << fmt(r.analytic)
           << ',' << fmt(r.asymptotic) << ',' << fmt(r.mc_estimate) << ','
           << fmt(r.mc_stderr) << ',' << fmt(r.z_score) << ','
           << (r.pass ? "true" : "false") << ',' << r.error << '\n';
    }
}

std::string to_csv(const ValidationReport& report) {
    std::ostringstream os;
    write_csv(report, os);
    return os.str();
}

std::string summary_text(const ValidationReport& report) {
    std::size_t failed = 0;
    double worst_z = 0.0;
    std::string failing;
    for (const auto& r : report.rows) {
        if (std::isfinite(r.z_score) && std::abs(r.z_score) > std::abs(worst_z))
            worst_z = r.z_score;
        if (!r.pass) {
            ++failed;
            failing += " " + r.scenario_id + "/" + r.metric;
        }
    }
    std::ostringstream os;
    os << "validation: " << report.rows.size() - failed << "/"
       << report.rows.size() << " rows pass; worst z = " << fmt(worst_z);
    if (failed > 0) os << "; failing:" << failing;
    os << "\n";
    return os.str();
}

} // namespace rfso::harness

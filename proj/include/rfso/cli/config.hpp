#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "rfso/system/monte_carlo.hpp"

namespace rfso::cli {

// Raised for malformed config text, unknown keys, or invalid sweep specs.
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A full run description: the physical scenario plus Monte Carlo settings.
struct RunConfig {
    system::ScenarioParams scenario;
    system::McConfig mc;
};

// Sweep over one scenario variable. snr_db follows the equal-hop convention:
// it sets the RF mean SNR and the optical electrical SNR together.
struct SweepSpec {
    std::string variable; // snr_db | inr_db | threshold_db | boresight | count
    double from = 0.0;
    double to = 0.0;
    double step = 0.0;
    // outage_exact | outage_asymptotic | outage_mc | asr_exact |
    // asr_asymptotic | asr_mc
    std::vector<std::string> outputs;

    void validate() const;
    std::vector<double> grid() const;
};

// Section -> key -> value, as read from the INI-like text. Kept public so
// presets can overlay key overrides before typed conversion.
using SectionMap = std::map<std::string, std::map<std::string, std::string>>;

SectionMap parse_ini(const std::string& text);

// Typed conversion. Unknown sections/keys raise config_error. Scale-carrying
// quantities accept exactly one of the _db / _lin spellings.
RunConfig to_run_config(const SectionMap& m);
bool has_sweep(const SectionMap& m);
SweepSpec to_sweep_spec(const SectionMap& m);

RunConfig parse_config(const std::string& text);
RunConfig parse_config_file(const std::string& path);

// Canonical emission; parse_config(emit_config(c)) reproduces c exactly
// (linear spellings, full double precision).
std::string emit_config(const RunConfig& c);
std::string emit_sweep(const SweepSpec& s);

// Dotted-path override, e.g. set_key(m, "iqi.epsilon_t", "0.521").
void set_key(SectionMap& m, const std::string& dotted_key,
             const std::string& value);

// Generic result table; all cells pre-formatted for byte-stable output.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

// One row per grid point: swept variable, requested outputs (mc outputs are
// followed by their stderr column), and a trailing error column holding
// per-point failure text.
Table run_sweep(const RunConfig& base, const SweepSpec& spec);

void emit_csv(const Table& t, std::ostream& os);
void emit_plotdata(const Table& t, std::ostream& os);
void write_table(const Table& t, const std::string& path,
                 const std::string& format);

std::string format_double(double v);

namespace detail {
// SIGINT hook: makes run_sweep stop after the current point so partial
// tables are still flushed (with a truncation marker).
void request_interrupt();
} // namespace detail

} // namespace rfso::cli

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "rfso/cli/config.hpp"

namespace rfso::cli {

// One curve of a figure preset: a label plus dotted-key overrides applied on
// top of the preset's base config text.
struct PresetCurve {
    std::string label;
    std::vector<std::pair<std::string, std::string>> overrides;
};

struct Preset {
    std::string name;
    std::string description;
    std::string text; // base config + [sweep]; shown verbatim by `preset show`
    std::vector<PresetCurve> curves;
};

const std::vector<Preset>& presets();
const Preset& find_preset(const std::string& name); // throws config_error

// Runs every curve of the preset and stacks the per-curve sweep tables into
// one long-format table with a leading "curve" column. Zero overrides for
// seed/trials keep the preset's own values.
Table run_preset(const Preset& p, std::uint64_t seed_override = 0,
                 std::uint64_t trials_override = 0);

} // namespace rfso::cli

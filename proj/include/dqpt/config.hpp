#pragma once

#include <string>

#include "dqpt/bathrates.hpp"
#include "dqpt/model.hpp"

namespace dqpt {

enum class EngineChoice { Exact, Lindblad, Both };
enum class RateDenominator { Total, ChainA };
enum class MxSites { ChainA, Ring };

struct RunParams {
    EngineChoice engine = EngineChoice::Exact;
    int periods = 1;
    int samples_per_period = 2000;
    int rk4_steps_per_sample = 10;
};

struct OutputParams {
    std::string path = "out";
    int precision = 12;  // significant digits in the CSV
};

struct ExperimentConfig {
    ModelParams model;
    BathParams bath;
    RunParams run;
    RateDenominator rate_denominator = RateDenominator::Total;
    MxSites m_x_sites = MxSites::ChainA;
    OutputParams output;

    void validate() const;  // throws ConfigError with the offending key path
};

namespace config {

// Strict parser: unknown keys, wrong types and out-of-range values are
// ConfigErrors carrying the key path. Accepts either a bare config or a run
// manifest (whose "config" object is then used).
ExperimentConfig parse_file(const std::string& path);
ExperimentConfig parse_json_text(const std::string& text);

// Serialized form used for the manifest echo; parse_json_text(to_json_text(c))
// reproduces c exactly.
std::string to_json_text(const ExperimentConfig& c);

// Set a numeric parameter by dotted path ("bath.gamma0", "model.nu", ...);
// used by sweeps. Throws ConfigError for unknown or non-numeric paths.
void set_numeric(ExperimentConfig& c, const std::string& dotted_path, double value);

// Whether a dotted path names a sweepable numeric parameter.
bool is_sweepable(const std::string& dotted_path);

const char* engine_name(EngineChoice e);
const char* denominator_name(RateDenominator d);
const char* m_x_sites_name(MxSites s);

}  // namespace config
}  // namespace dqpt

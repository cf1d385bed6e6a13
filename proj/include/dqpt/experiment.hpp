#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dqpt/config.hpp"
#include "dqpt/engine.hpp"
#include "dqpt/observables.hpp"

namespace dqpt {

inline constexpr const char* kVersion = "0.1.0";

struct RunResult {
    std::vector<ObservableRecord> records;
    std::vector<double> cusp_times;  // units of T, midpoints of bracketing samples
    double grid_step = 0.0;          // sample spacing in units of T
    std::optional<double> cross_check_distance;  // engine = both only
    std::string csv_path;
    std::string manifest_path;
};

struct SweepPoint {
    double value = 0.0;
    bool ok = false;
    std::string error;  // empty when ok
    std::vector<double> cusp_times;
    std::string output_dir;
};

struct SweepResult {
    std::vector<SweepPoint> points;
    std::string summary_path;
};

namespace experiment {

// Sample grid for a config: samples_per_period * periods points, t = 0
// inclusive, end exclusive.
std::vector<double> sample_times(const ExperimentConfig& cfg);

// Evaluate every observable on one full-ring state.
ObservableRecord make_record(double t, const Operator& rho, const ExperimentConfig& cfg,
                             const Operator& j_full);

// Cusp = sample where the minimizing rate branch flips; reported time is the
// midpoint of the bracketing samples (uncertainty half a grid step).
std::vector<double> detect_cusps(const std::vector<ObservableRecord>& records);

// Run the quench protocol and compute the observable time series in memory.
std::vector<ObservableRecord> compute_records(const ExperimentConfig& cfg,
                                              std::optional<double>* cross_check = nullptr);

// Full runner: compute, then write timeseries.csv and manifest.json under
// cfg.output.path.
RunResult run_quench(const ExperimentConfig& cfg);

// One run per value of the swept parameter; a failing point is recorded in
// the summary and does not abort the sweep. Points execute on a worker pool
// sized by DQPT_WORKERS (default: hardware concurrency).
SweepResult run_sweep(const ExperimentConfig& base, const std::string& axis,
                      const std::vector<double>& values);

// Dump gamma1, gamma, lambda, Gamma, Lambda over one period as CSV text.
std::string rates_csv(const ExperimentConfig& cfg);

// Invariant suite behind the `validate` subcommand. `drop_closure_bond`
// builds the ring without its closing bond (negative control; conservation
// then fails and so does the suite).
struct ValidationReport {
    bool ok = true;
    std::string text;
};
ValidationReport validate(bool drop_closure_bond = false);

// CSV serialization (also used by tests); asserts record invariants.
std::string records_to_csv(const std::vector<ObservableRecord>& records, int precision);

// Peak of gamma1 over one period on a fine grid.
double max_gamma1(const BathParams& b, int grid = 20000);

}  // namespace experiment
}  // namespace dqpt

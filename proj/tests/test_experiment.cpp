#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dqpt/errors.hpp"
#include "dqpt/experiment.hpp"

using namespace dqpt;
namespace fs = std::filesystem;

namespace {

ExperimentConfig quick_config(const std::string& out_dir) {
    ExperimentConfig c;
    c.bath.gamma0 = 0.1;
    c.bath.h = 0.3;
    c.run.samples_per_period = 40;
    c.output.path = out_dir;
    return c;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(bool(in));
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

TEST_CASE("sample grid: endpoint-exclusive uniform samples") {
    ExperimentConfig c;
    c.run.periods = 2;
    c.run.samples_per_period = 4;
    const auto times = experiment::sample_times(c);
    REQUIRE(times.size() == 8);
    CHECK(times.front() == 0.0);
    const double t_p = c.bath.period();
    CHECK(times[4] == doctest::Approx(t_p));
    CHECK(times.back() == doctest::Approx(2 * t_p * 7.0 / 8.0));
}

TEST_CASE("cusp detection reports branch-flip midpoints and skips divergences") {
    std::vector<ObservableRecord> recs(5);
    for (size_t k = 0; k < recs.size(); ++k) {
        recs[k].t_over_t = 0.1 * static_cast<double>(k);
        recs[k].rate_branch = k < 2 ? +1 : -1;
    }
    recs[4].rate_branch = +1;
    recs[4].rate_diverged = true;
    const auto cusps = experiment::detect_cusps(recs);
    REQUIRE(cusps.size() == 1);
    CHECK(cusps[0] == doctest::Approx(0.15));
}

TEST_CASE("CSV schema and writer invariants") {
    std::vector<ObservableRecord> recs(1);
    recs[0].p_plus = 1.0;
    recs[0].g_f_plus = 1.0;
    recs[0].purity = 1.0;
    const std::string csv = experiment::records_to_csv(recs, 12);
    CHECK(csv.rfind("t_over_T,gamma_t,lambda_t,rate_function,rate_branch,G_F_plus,G_F_minus,"
                    "P_plus,P_minus,M_x,J_expect,trace_dev,purity\n",
                    0) == 0);

    recs[0].p_plus = 0.7;  // P_+ + P_- != 1
    CHECK_THROWS_AS((void)experiment::records_to_csv(recs, 12), Error);
}

TEST_CASE("quench run writes CSV and a re-runnable manifest; output is deterministic") {
    const std::string dir1 = "test_out/quench1", dir2 = "test_out/quench2";
    auto cfg = quick_config(dir1);
    const auto r1 = experiment::run_quench(cfg);
    REQUIRE(fs::exists(r1.csv_path));
    REQUIRE(fs::exists(r1.manifest_path));
    CHECK(r1.records.size() == 40);

    // byte-identical on repeat
    cfg.output.path = dir2;
    const auto r2 = experiment::run_quench(cfg);
    CHECK(slurp(r1.csv_path) == slurp(r2.csv_path));

    // manifest round-trip: its echoed config reproduces the CSV
    const auto echoed = config::parse_json_text(slurp(r1.manifest_path));
    auto cfg3 = echoed;
    cfg3.output.path = "test_out/quench3";
    const auto r3 = experiment::run_quench(cfg3);
    CHECK(slurp(r1.csv_path) == slurp(r3.csv_path));

    const auto manifest = nlohmann::json::parse(slurp(r1.manifest_path));
    CHECK(manifest.at("derived").at("T").get<double>() == doctest::Approx(cfg.bath.period()));
    CHECK(manifest.at("software_version").get<std::string>() == kVersion);
}

TEST_CASE("engine=both records the cross-check distance in the manifest") {
    auto cfg = quick_config("test_out/both");
    cfg.run.engine = EngineChoice::Both;
    cfg.run.samples_per_period = 10;
    cfg.run.rk4_steps_per_sample = 200;
    const auto r = experiment::run_quench(cfg);
    REQUIRE(r.cross_check_distance.has_value());
    CHECK(*r.cross_check_distance <= 1e-6);
}

TEST_CASE("rate function value is invariant up to the denominator scale") {
    auto cfg = quick_config("test_out/denom_total");
    cfg.run.samples_per_period = 12;
    const auto total = experiment::compute_records(cfg);
    cfg.rate_denominator = RateDenominator::ChainA;
    const auto chain_a = experiment::compute_records(cfg);
    for (size_t k = 0; k < total.size(); ++k) {
        CHECK(total[k].rate_branch == chain_a[k].rate_branch);
        CHECK(total[k].rate_function * cfg.model.total_sites() ==
              doctest::Approx(chain_a[k].rate_function * cfg.model.n_a).epsilon(1e-10));
    }
}

TEST_CASE("sweep writes per-point outputs and a quoted cusp summary") {
    auto cfg = quick_config("test_out/sweep");
    cfg.run.samples_per_period = 20;
    const auto res = experiment::run_sweep(cfg, "bath.gamma0", {0.0, 0.15});
    REQUIRE(res.points.size() == 2);
    for (const auto& pt : res.points) {
        CHECK(pt.ok);
        CHECK(fs::exists(fs::path(pt.output_dir) / "timeseries.csv"));
    }
    const std::string summary = slurp(res.summary_path);
    CHECK(summary.rfind("axis,value,status,cusp_times_over_T\n", 0) == 0);
    CHECK(summary.find("bath.gamma0,0,ok,\"") != std::string::npos);
}

TEST_CASE("a failing sweep point is recorded without aborting the others") {
    auto cfg = quick_config("test_out/sweep_fail");
    cfg.run.samples_per_period = 20;
    const auto res = experiment::run_sweep(cfg, "bath.gamma0", {-1.0, 0.1});
    REQUIRE(res.points.size() == 2);
    CHECK_FALSE(res.points[0].ok);
    CHECK(!res.points[0].error.empty());
    CHECK(res.points[1].ok);
}

TEST_CASE("unknown sweep axis is rejected up front") {
    auto cfg = quick_config("test_out/sweep_bad_axis");
    CHECK_THROWS_AS((void)experiment::run_sweep(cfg, "model.magic", {1.0}), ConfigError);
}

TEST_CASE("rates dump covers all five bath functions") {
    auto cfg = quick_config("unused");
    cfg.run.samples_per_period = 16;
    const std::string csv = experiment::rates_csv(cfg);
    CHECK(csv.rfind("t_over_T,gamma1,gamma_t,lambda_t,big_gamma,big_lambda\n", 0) == 0);
    size_t rows = 0;
    for (char ch : csv)
        if (ch == '\n') ++rows;
    CHECK(rows == 17);  // header + 16 samples
}

TEST_CASE("validation suite passes; the closure-bond negative control fails") {
    // keep this test cheap: the full suite runs in the CLI test and acceptance
    const auto bad = experiment::validate(/*drop_closure_bond=*/true);
    CHECK_FALSE(bad.ok);
    CHECK(bad.text.find("[FAIL]") != std::string::npos);
}

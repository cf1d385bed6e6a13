#include <cstdio>
#include <exception>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dqpt/errors.hpp"
#include "dqpt/experiment.hpp"

namespace {

std::vector<double> parse_values(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        size_t pos = 0;
        double v;
        try {
            v = std::stod(tok, &pos);
        } catch (const std::exception&) {
            throw dqpt::ConfigError("--values: cannot parse '" + tok + "' as a number");
        }
        while (pos < tok.size() && std::isspace(static_cast<unsigned char>(tok[pos]))) ++pos;
        if (pos != tok.size())
            throw dqpt::ConfigError("--values: cannot parse '" + tok + "' as a number");
        out.push_back(v);
    }
    if (out.empty()) throw dqpt::ConfigError("--values: expected at least one number");
    return out;
}

int run(int argc, char** argv) {
    CLI::App app{"Dephasing dynamics of a transverse-field Ising ring"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(dqpt::kVersion));

    std::string config_path, out_dir, axis, values_csv;
    bool drop_closure = false;

    auto* sim = app.add_subcommand("simulate", "Run one quench and write timeseries.csv");
    sim->add_option("--config", config_path, "JSON config file")->required();
    sim->add_option("--out", out_dir, "output directory (overrides output.path)");

    auto* sweep = app.add_subcommand("sweep", "Run one quench per value of a parameter");
    sweep->add_option("--config", config_path, "JSON config file")->required();
    sweep->add_option("--axis", axis, "dotted parameter path, e.g. bath.gamma0")->required();
    sweep->add_option("--values", values_csv, "comma-separated values")->required();

    auto* val = app.add_subcommand("validate", "Run the physics invariant suite");
    val->add_flag("--drop-closure-bond", drop_closure)->group("");  // negative control

    auto* rates = app.add_subcommand("rates", "Print the bath rate functions as CSV");
    rates->add_option("--config", config_path, "JSON config file")->required();

    CLI11_PARSE(app, argc, argv);

    if (sim->parsed()) {
        auto cfg = dqpt::config::parse_file(config_path);
        if (!out_dir.empty()) cfg.output.path = out_dir;
        const auto res = dqpt::experiment::run_quench(cfg);
        std::printf("wrote %s (%zu samples, %zu cusps)\n", res.csv_path.c_str(),
                    res.records.size(), res.cusp_times.size());
        return 0;
    }
    if (sweep->parsed()) {
        const auto cfg = dqpt::config::parse_file(config_path);
        const auto values = parse_values(values_csv);
        const auto res = dqpt::experiment::run_sweep(cfg, axis, values);
        bool all_ok = true;
        for (const auto& p : res.points) {
            if (p.ok) {
                std::printf("%s = %g: %zu cusps\n", axis.c_str(), p.value, p.cusp_times.size());
            } else {
                std::printf("%s = %g: FAILED (%s)\n", axis.c_str(), p.value, p.error.c_str());
                all_ok = false;
            }
        }
        std::printf("wrote %s\n", res.summary_path.c_str());
        return all_ok ? 0 : 1;
    }
    if (val->parsed()) {
        const auto report = dqpt::experiment::validate(drop_closure);
        std::fputs(report.text.c_str(), stdout);
        return report.ok ? 0 : 1;
    }
    // rates
    const auto cfg = dqpt::config::parse_file(config_path);
    std::fputs(dqpt::experiment::rates_csv(cfg).c_str(), stdout);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const dqpt::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const dqpt::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}

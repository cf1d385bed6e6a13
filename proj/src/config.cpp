#include "dqpt/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "dqpt/errors.hpp"

namespace dqpt {

using nlohmann::json;

void ExperimentConfig::validate() const {
    try {
        model.validate();
    } catch (const Error& e) {
        throw ConfigError(std::string("model: ") + e.what());
    }
    try {
        bath.validate();
    } catch (const Error& e) {
        throw ConfigError(std::string("bath: ") + e.what());
    }
    if (run.periods < 1) throw ConfigError("run.periods: must be >= 1");
    if (run.samples_per_period < 1) throw ConfigError("run.samples_per_period: must be >= 1");
    if (run.rk4_steps_per_sample < 1) throw ConfigError("run.rk4_steps_per_sample: must be >= 1");
    if (output.precision < 1 || output.precision > 17)
        throw ConfigError("output.precision: must be in [1, 17]");
    if (output.path.empty()) throw ConfigError("output.path: must not be empty");
}

namespace config {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
    throw ConfigError(path + ": " + msg);
}

void check_keys(const json& obj, const std::string& path,
                std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) fail(path, "expected an object");
    for (const auto& [key, _] : obj.items()) {
        bool ok = false;
        for (const char* a : allowed)
            if (key == a) ok = true;
        if (!ok) fail(path.empty() ? key : path + "." + key, "unknown key");
    }
}

double get_number(const json& obj, const std::string& path, const char* key, double fallback) {
    if (!obj.contains(key)) return fallback;
    const auto& v = obj.at(key);
    if (!v.is_number()) fail(path + "." + key, "expected a number");
    return v.get<double>();
}

int get_int(const json& obj, const std::string& path, const char* key, int fallback) {
    if (!obj.contains(key)) return fallback;
    const auto& v = obj.at(key);
    if (!v.is_number_integer()) fail(path + "." + key, "expected an integer");
    return v.get<int>();
}

std::string get_string(const json& obj, const std::string& path, const char* key,
                       const std::string& fallback) {
    if (!obj.contains(key)) return fallback;
    const auto& v = obj.at(key);
    if (!v.is_string()) fail(path + "." + key, "expected a string");
    return v.get<std::string>();
}

ExperimentConfig from_json(const json& root) {
    ExperimentConfig c;
    check_keys(root, "", {"model", "bath", "run", "rate_function", "observables", "output"});

    if (root.contains("model")) {
        const auto& m = root.at("model");
        check_keys(m, "model", {"N_A", "N_B", "tau", "H_field", "nu"});
        c.model.n_a = get_int(m, "model", "N_A", c.model.n_a);
        c.model.n_b = get_int(m, "model", "N_B", c.model.n_b);
        c.model.tau = get_number(m, "model", "tau", c.model.tau);
        c.model.h_field = get_number(m, "model", "H_field", c.model.h_field);
        c.model.nu = get_number(m, "model", "nu", c.model.nu);
    }
    if (root.contains("bath")) {
        const auto& b = root.at("bath");
        check_keys(b, "bath", {"gamma0", "h", "z", "M", "beta_NMB", "Omega"});
        c.bath.gamma0 = get_number(b, "bath", "gamma0", c.bath.gamma0);
        c.bath.h = get_number(b, "bath", "h", c.bath.h);
        c.bath.z = get_number(b, "bath", "z", c.bath.z);
        c.bath.modes = get_int(b, "bath", "M", c.bath.modes);
        c.bath.omega = get_number(b, "bath", "Omega", c.bath.omega);
        if (b.contains("beta_NMB")) {
            const auto& v = b.at("beta_NMB");
            if (v.is_string()) {
                if (v.get<std::string>() != "inf")
                    fail("bath.beta_NMB", "expected a positive number or \"inf\"");
                c.bath.beta = std::numeric_limits<double>::infinity();
            } else if (v.is_number()) {
                c.bath.beta = v.get<double>();
            } else {
                fail("bath.beta_NMB", "expected a positive number or \"inf\"");
            }
        }
    }
    if (root.contains("run")) {
        const auto& r = root.at("run");
        check_keys(r, "run", {"engine", "periods", "samples_per_period", "rk4_steps_per_sample"});
        const std::string eng = get_string(r, "run", "engine", "exact");
        if (eng == "exact")
            c.run.engine = EngineChoice::Exact;
        else if (eng == "lindblad")
            c.run.engine = EngineChoice::Lindblad;
        else if (eng == "both")
            c.run.engine = EngineChoice::Both;
        else
            fail("run.engine", "expected one of exact|lindblad|both");
        c.run.periods = get_int(r, "run", "periods", c.run.periods);
        c.run.samples_per_period = get_int(r, "run", "samples_per_period", c.run.samples_per_period);
        c.run.rk4_steps_per_sample =
            get_int(r, "run", "rk4_steps_per_sample", c.run.rk4_steps_per_sample);
    }
    if (root.contains("rate_function")) {
        const auto& r = root.at("rate_function");
        check_keys(r, "rate_function", {"denominator"});
        const std::string d = get_string(r, "rate_function", "denominator", "total");
        if (d == "total")
            c.rate_denominator = RateDenominator::Total;
        else if (d == "chain_A")
            c.rate_denominator = RateDenominator::ChainA;
        else
            fail("rate_function.denominator", "expected total|chain_A");
    }
    if (root.contains("observables")) {
        const auto& o = root.at("observables");
        check_keys(o, "observables", {"m_x_sites"});
        const std::string s = get_string(o, "observables", "m_x_sites", "chain_A");
        if (s == "chain_A")
            c.m_x_sites = MxSites::ChainA;
        else if (s == "ring")
            c.m_x_sites = MxSites::Ring;
        else
            fail("observables.m_x_sites", "expected chain_A|ring");
    }
    if (root.contains("output")) {
        const auto& o = root.at("output");
        check_keys(o, "output", {"path", "precision"});
        c.output.path = get_string(o, "output", "path", c.output.path);
        c.output.precision = get_int(o, "output", "precision", c.output.precision);
    }
    c.validate();
    return c;
}

}  // namespace

ExperimentConfig parse_json_text(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("invalid JSON: ") + e.what());
    }
    if (root.is_object() && root.contains("config")) return from_json(root.at("config"));
    return from_json(root);
}

ExperimentConfig parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_json_text(buf.str());
}

std::string to_json_text(const ExperimentConfig& c) {
    json root;
    root["model"] = {{"N_A", c.model.n_a}, {"N_B", c.model.n_b},       {"tau", c.model.tau},
                     {"H_field", c.model.h_field}, {"nu", c.model.nu}};
    root["bath"] = {{"gamma0", c.bath.gamma0}, {"h", c.bath.h},   {"z", c.bath.z},
                    {"M", c.bath.modes},       {"Omega", c.bath.omega}};
    if (std::isinf(c.bath.beta))
        root["bath"]["beta_NMB"] = "inf";
    else
        root["bath"]["beta_NMB"] = c.bath.beta;
    root["run"] = {{"engine", engine_name(c.run.engine)},
                   {"periods", c.run.periods},
                   {"samples_per_period", c.run.samples_per_period},
                   {"rk4_steps_per_sample", c.run.rk4_steps_per_sample}};
    root["rate_function"] = {{"denominator", denominator_name(c.rate_denominator)}};
    root["observables"] = {{"m_x_sites", m_x_sites_name(c.m_x_sites)}};
    root["output"] = {{"path", c.output.path}, {"precision", c.output.precision}};
    return root.dump(2);
}

bool is_sweepable(const std::string& dotted_path) {
    static const char* const paths[] = {"model.tau",   "model.H_field", "model.nu",
                                        "bath.gamma0", "bath.h",        "bath.z",
                                        "bath.beta_NMB", "bath.Omega"};
    for (const char* p : paths)
        if (dotted_path == p) return true;
    return false;
}

void set_numeric(ExperimentConfig& c, const std::string& dotted_path, double value) {
    if (dotted_path == "model.tau")
        c.model.tau = value;
    else if (dotted_path == "model.H_field")
        c.model.h_field = value;
    else if (dotted_path == "model.nu")
        c.model.nu = value;
    else if (dotted_path == "bath.gamma0")
        c.bath.gamma0 = value;
    else if (dotted_path == "bath.h")
        c.bath.h = value;
    else if (dotted_path == "bath.z")
        c.bath.z = value;
    else if (dotted_path == "bath.beta_NMB")
        c.bath.beta = value;
    else if (dotted_path == "bath.Omega")
        c.bath.omega = value;
    else
        throw ConfigError(dotted_path + ": not a sweepable numeric parameter");
    c.validate();
}

const char* engine_name(EngineChoice e) {
    switch (e) {
        case EngineChoice::Exact:
            return "exact";
        case EngineChoice::Lindblad:
            return "lindblad";
        case EngineChoice::Both:
            return "both";
    }
    return "exact";
}

const char* denominator_name(RateDenominator d) {
    return d == RateDenominator::Total ? "total" : "chain_A";
}

const char* m_x_sites_name(MxSites s) {
    return s == MxSites::ChainA ? "chain_A" : "ring";
}

}  // namespace config
}  // namespace dqpt

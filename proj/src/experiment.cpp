#include "dqpt/experiment.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "dqpt/errors.hpp"
#include "dqpt/prep.hpp"

namespace dqpt::experiment {

namespace fs = std::filesystem;

std::vector<double> sample_times(const ExperimentConfig& cfg) {
    const double period = cfg.bath.period();
    const int total = cfg.run.samples_per_period * cfg.run.periods;
    std::vector<double> times(static_cast<size_t>(total));
    const double span = period * cfg.run.periods;
    for (int k = 0; k < total; ++k) times[static_cast<size_t>(k)] = span * k / total;
    return times;
}

ObservableRecord make_record(double t, const Operator& rho, const ExperimentConfig& cfg,
                             const Operator& j_full) {
    ObservableRecord r;
    const double period = cfg.bath.period();
    r.t_over_t = t / period;
    r.gamma_t = bathrates::gamma_total(t, cfg.bath);
    r.lambda_t = bathrates::lamb_shift(t, cfg.bath);

    const Operator rho_a = observables::partial_trace_b(rho, cfg.model.n_a, cfg.model.n_b);
    const int denom = cfg.rate_denominator == RateDenominator::Total ? cfg.model.total_sites()
                                                                     : cfg.model.n_a;
    const RateResult rate = observables::rate_function(rho_a, denom);
    r.rate_function = rate.value;
    r.rate_branch = rate.branch;
    r.rate_diverged = rate.diverged;
    r.g_f_plus = rate.g_f_plus;
    r.g_f_minus = rate.g_f_minus;
    std::tie(r.p_plus, r.p_minus) = observables::return_probabilities(rho_a);
    r.m_x = cfg.m_x_sites == MxSites::Ring
                ? observables::magnetization_x(rho, cfg.model.total_sites())
                : observables::magnetization_x(rho_a, cfg.model.n_a);
    r.j_expect = std::real((j_full * rho).trace());
    r.trace_dev = std::abs(Complex(rho.trace()) - Complex{1.0, 0.0});
    r.purity = rho.squaredNorm();
    return r;
}

std::vector<double> detect_cusps(const std::vector<ObservableRecord>& records) {
    std::vector<double> out;
    for (size_t k = 1; k < records.size(); ++k) {
        if (records[k].rate_diverged || records[k - 1].rate_diverged) continue;
        if (records[k].rate_branch != records[k - 1].rate_branch)
            out.push_back((records[k].t_over_t + records[k - 1].t_over_t) / 2.0);
    }
    return out;
}

std::vector<ObservableRecord> compute_records(const ExperimentConfig& cfg,
                                              std::optional<double>* cross_check) {
    cfg.validate();
    const Operator h = model::build_ring_hamiltonian(cfg.model);
    const Operator j = model::build_global_current(cfg.model);
    const Operator rho0 = prep::initial_density_matrix(cfg.model);
    const std::vector<double> times = sample_times(cfg);

    std::vector<ObservableRecord> records;
    records.reserve(times.size());

    const bool want_exact =
        cfg.run.engine == EngineChoice::Exact || cfg.run.engine == EngineChoice::Both;
    EigenSystem eig;
    if (want_exact) eig = engine::simultaneous_eigensystem(h, j);

    if (cfg.run.engine == EngineChoice::Exact) {
        engine::evolve_exact(rho0, eig, cfg.bath, times, [&](double t, const Operator& rho) {
            records.push_back(make_record(t, rho, cfg, j));
        });
    } else if (cfg.run.engine == EngineChoice::Lindblad) {
        engine::evolve_lindblad(rho0, h, j, cfg.bath, times, cfg.run.rk4_steps_per_sample,
                                [&](double t, const Operator& rho) {
                                    records.push_back(make_record(t, rho, cfg, j));
                                });
    } else {
        // exact is the reference for the records; RK4 supplies the cross-check
        double max_dist = 0.0;
        size_t k = 0;
        engine::evolve_lindblad(
            rho0, h, j, cfg.bath, times, cfg.run.rk4_steps_per_sample,
            [&](double t, const Operator& rho_rk) {
                Operator rho_exact;
                engine::evolve_exact(rho0, eig, cfg.bath, {t},
                                     [&](double, const Operator& r) { rho_exact = r; });
                max_dist = std::max(max_dist, observables::trace_distance(rho_exact, rho_rk));
                records.push_back(make_record(t, rho_exact, cfg, j));
                ++k;
            });
        if (cross_check) *cross_check = max_dist;
    }
    return records;
}

namespace {

std::string format_double(double v, int precision) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", precision, v);
    return buf;
}

void assert_record_invariants(const ObservableRecord& r) {
    constexpr double tol = 1e-8;
    auto in_range = [&](double v, double lo, double hi) { return v >= lo - tol && v <= hi + tol; };
    if (std::abs(r.p_plus + r.p_minus - 1.0) > 1e-10)
        throw Error("record invariant violated: P_+ + P_- != 1 at t/T=" +
                    std::to_string(r.t_over_t));
    if (!in_range(r.g_f_plus, 0, 1) || !in_range(r.g_f_minus, 0, 1) ||
        !in_range(r.p_plus, 0, 1) || !in_range(r.p_minus, 0, 1) || !in_range(r.m_x, -1, 1) ||
        !in_range(r.purity, 0, 1) || (!r.rate_diverged && r.rate_function < -tol))
        throw Error("record invariant violated: field out of range at t/T=" +
                    std::to_string(r.t_over_t));
}

}  // namespace

std::string records_to_csv(const std::vector<ObservableRecord>& records, int precision) {
    std::ostringstream out;
    out << "t_over_T,gamma_t,lambda_t,rate_function,rate_branch,G_F_plus,G_F_minus,"
           "P_plus,P_minus,M_x,J_expect,trace_dev,purity\n";
    for (const auto& r : records) {
        assert_record_invariants(r);
        out << format_double(r.t_over_t, precision) << ',' << format_double(r.gamma_t, precision)
            << ',' << format_double(r.lambda_t, precision) << ','
            << format_double(r.rate_function, precision) << ','
            << (r.rate_branch > 0 ? '+' : '-') << ',' << format_double(r.g_f_plus, precision)
            << ',' << format_double(r.g_f_minus, precision) << ','
            << format_double(r.p_plus, precision) << ',' << format_double(r.p_minus, precision)
            << ',' << format_double(r.m_x, precision) << ',' << format_double(r.j_expect, precision)
            << ',' << format_double(r.trace_dev, precision) << ','
            << format_double(r.purity, precision) << '\n';
    }
    return out.str();
}

double max_gamma1(const BathParams& b, int grid) {
    const double period = b.period();
    double best = 0.0;
    for (int k = 0; k < grid; ++k)
        best = std::max(best, bathrates::gamma1(period * k / grid, b));
    return best;
}

RunResult run_quench(const ExperimentConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    RunResult res;
    std::optional<double> cross;
    res.records = compute_records(cfg, &cross);
    res.cross_check_distance = cross;
    res.cusp_times = detect_cusps(res.records);
    res.grid_step = 1.0 / cfg.run.samples_per_period;

    fs::create_directories(cfg.output.path);
    res.csv_path = (fs::path(cfg.output.path) / "timeseries.csv").string();
    res.manifest_path = (fs::path(cfg.output.path) / "manifest.json").string();

    {
        std::ofstream out(res.csv_path, std::ios::binary);
        if (!out) throw Error("cannot write " + res.csv_path);
        out << records_to_csv(res.records, cfg.output.precision);
    }

    nlohmann::json manifest;
    manifest["config"] = nlohmann::json::parse(config::to_json_text(cfg));
    const double j0 = std::real(
        (model::build_global_current(cfg.model) * prep::initial_density_matrix(cfg.model)).trace());
    const StateVector psi_g = prep::chain_b_ground(cfg.model);
    const Operator h_b = model::build_chain_b_hamiltonian(cfg.model);
    manifest["derived"] = {
        {"T", cfg.bath.period()},
        {"max_gamma1", max_gamma1(cfg.bath)},
        {"J0_expect", j0},
        {"chain_A_ground_energy", -(cfg.model.n_a - 1) * cfg.model.tau},
        {"chain_B_ground_energy", std::real(Complex(psi_g.adjoint() * h_b * psi_g))},
    };
    manifest["cusp_times_over_T"] = res.cusp_times;
    if (res.cross_check_distance)
        manifest["engine_cross_check_trace_distance"] = *res.cross_check_distance;
    else
        manifest["engine_cross_check_trace_distance"] = nullptr;
    manifest["software_version"] = kVersion;
    manifest["wall_time_s"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    {
        std::ofstream out(res.manifest_path, std::ios::binary);
        if (!out) throw Error("cannot write " + res.manifest_path);
        out << manifest.dump(2) << '\n';
    }
    return res;
}

namespace {

int worker_count(size_t n_points) {
    int w = 0;
    if (const char* env = std::getenv("DQPT_WORKERS")) w = std::atoi(env);
    if (w < 1) w = static_cast<int>(std::thread::hardware_concurrency());
    if (w < 1) w = 1;
    return std::min<int>(w, static_cast<int>(n_points));
}

}  // namespace

SweepResult run_sweep(const ExperimentConfig& base, const std::string& axis,
                      const std::vector<double>& values) {
    base.validate();
    // reject unknown axes up front; invalid values are per-point failures
    if (!config::is_sweepable(axis))
        throw ConfigError(axis + ": not a sweepable numeric parameter");
    SweepResult result;
    result.points.resize(values.size());

    std::atomic<size_t> next{0};
    auto work = [&]() {
        for (;;) {
            const size_t i = next.fetch_add(1);
            if (i >= values.size()) return;
            SweepPoint& pt = result.points[i];
            pt.value = values[i];
            try {
                ExperimentConfig cfg = base;
                config::set_numeric(cfg, axis, values[i]);
                std::ostringstream dir;
                dir << base.output.path << "/" << axis << "=" << format_double(values[i], 12);
                cfg.output.path = dir.str();
                const RunResult run = run_quench(cfg);
                pt.cusp_times = run.cusp_times;
                pt.output_dir = cfg.output.path;
                pt.ok = true;
            } catch (const std::exception& e) {
                pt.ok = false;
                pt.error = e.what();
            }
        }
    };
    std::vector<std::thread> pool;
    const int workers = worker_count(values.size());
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();

    fs::create_directories(base.output.path);
    result.summary_path = (fs::path(base.output.path) / "sweep_summary.csv").string();
    std::ofstream out(result.summary_path, std::ios::binary);
    if (!out) throw Error("cannot write " + result.summary_path);
    out << "axis,value,status,cusp_times_over_T\n";
    for (const auto& pt : result.points) {
        out << axis << ',' << format_double(pt.value, 12) << ',' << (pt.ok ? "ok" : "failed")
            << ',' << '"';
        for (size_t k = 0; k < pt.cusp_times.size(); ++k) {
            if (k) out << ';';
            out << format_double(pt.cusp_times[k], 12);
        }
        out << '"' << '\n';
    }
    return result;
}

std::string rates_csv(const ExperimentConfig& cfg) {
    std::ostringstream out;
    out << "t_over_T,gamma1,gamma_t,lambda_t,big_gamma,big_lambda\n";
    const double period = cfg.bath.period();
    const int n = cfg.run.samples_per_period;
    for (int k = 0; k < n; ++k) {
        const double t = period * k / n;
        out << format_double(t / period, cfg.output.precision) << ','
            << format_double(bathrates::gamma1(t, cfg.bath), cfg.output.precision) << ','
            << format_double(bathrates::gamma_total(t, cfg.bath), cfg.output.precision) << ','
            << format_double(bathrates::lamb_shift(t, cfg.bath), cfg.output.precision) << ','
            << format_double(bathrates::big_gamma(t, cfg.bath), cfg.output.precision) << ','
            << format_double(bathrates::big_lambda(t, cfg.bath), cfg.output.precision) << '\n';
    }
    return out.str();
}

ValidationReport validate(bool drop_closure_bond) {
    ValidationReport rep;
    std::ostringstream out;
    auto check = [&](const std::string& name, bool ok, const std::string& detail = "") {
        out << (ok ? "[pass] " : "[FAIL] ") << name;
        if (!detail.empty()) out << "  (" << detail << ")";
        out << '\n';
        if (!ok) rep.ok = false;
    };

    // conservation, N = 4..10, 20 random (tau, H) draws
    {
        std::mt19937 rng(20240817);
        std::uniform_real_distribution<double> dist(0.1, 2.0);
        double worst = 0.0;
        for (int n = 4; n <= 10; ++n) {
            for (int d = 0; d < 20; ++d) {
                ModelParams p;
                p.n_a = n - 2;
                p.n_b = 2;
                p.tau = dist(rng);
                p.h_field = dist(rng);
                const Operator h = model::build_ring_hamiltonian(p, !drop_closure_bond);
                const Operator j = model::build_global_current(p);
                worst = std::max(worst,
                                 spinops::commutator(h, j).norm() / (h.norm() * j.norm()));
            }
        }
        check("current conservation [H,J] = 0 (N=4..10, 20 draws)", worst < 1e-10,
              "worst relative norm " + format_double(worst, 3));
    }
    {
        ModelParams p;
        const Operator h_open = model::build_ring_hamiltonian(p, false);
        const Operator j = model::build_global_current(p);
        const double resid = spinops::commutator(h_open, j).norm() / (h_open.norm() * j.norm());
        check("negative control: open ring breaks conservation", resid > 1e-3,
              "relative norm " + format_double(resid, 3));
    }

    // bath rates
    {
        BathParams b;
        b.h = 0.5;
        const double peak = max_gamma1(b);
        // max over theta of arctan(e^-z sin / (1 - e^-z cos)) sits at cos = e^-z
        const double closed_form =
            b.h * b.h * std::atan(1.0 / std::sqrt(std::exp(2 * b.z) - 1.0));
        check("max gamma1 vs infinite-M closed form", std::abs(peak - closed_form) < 1e-3,
              format_double(peak, 6) + " vs " + format_double(closed_form, 6));

        const double period = b.period();
        double integral = 0.0;
        const int steps = 20000;
        for (int k = 0; k < steps; ++k) {
            const double t0 = period * k / steps, t1 = period * (k + 1) / steps;
            integral += (bathrates::gamma1(t0, b) + bathrates::gamma1(t1, b)) / 2 * (t1 - t0);
        }
        check("gamma1 averages to zero over one period", std::abs(integral) < 1e-9,
              "integral " + format_double(integral, 3));

        std::mt19937 rng(7);
        std::uniform_real_distribution<double> dist(0.0, 5 * period);
        double worst = 0.0;
        for (int k = 0; k < 100; ++k) {
            const double t = dist(rng);
            worst = std::max(worst, std::abs(bathrates::gamma_total(t + period, b) -
                                             bathrates::gamma_total(t, b)));
            worst = std::max(worst, std::abs(bathrates::lamb_shift(t + period, b) -
                                             bathrates::lamb_shift(t, b)));
        }
        check("gamma and lambda periodic with period T", worst < 1e-12,
              "worst " + format_double(worst, 3));

        BathParams b3 = b;
        b3.h = 0.3;
        const double ratio = max_gamma1(b3) / peak;
        check("max gamma1 scales as h^2", std::abs(ratio - 0.36) < 1e-12,
              "ratio " + format_double(ratio, 15));

        const double delta = 1e-6 * period;
        const double t_probe = 0.37 * period;
        const double fd =
            (bathrates::big_gamma(t_probe + delta, b) - bathrates::big_gamma(t_probe - delta, b)) /
            (2 * delta);
        check("dGamma/dt = gamma/2", std::abs(fd - bathrates::gamma_total(t_probe, b) / 2) < 1e-7);
        const double fd2 =
            (bathrates::big_lambda(t_probe + delta, b) - bathrates::big_lambda(t_probe - delta, b)) /
            (2 * delta);
        check("dLambda/dt = lambda", std::abs(fd2 - bathrates::lamb_shift(t_probe, b)) < 1e-7);
    }

    // engines agree at desk scale
    {
        ModelParams p;
        BathParams b;
        b.gamma0 = 0.2827;
        b.h = 0.5;
        const Operator h = model::build_ring_hamiltonian(p, !drop_closure_bond);
        const Operator j = model::build_global_current(p);
        const Operator rho0 = prep::initial_density_matrix(p);
        std::vector<double> times;
        for (int k = 1; k <= 5; ++k) times.push_back(0.05 * k * b.period());
        double worst = 0.0;
        try {
            const EigenSystem eig = engine::simultaneous_eigensystem(h, j);
            const Trajectory ex = engine::evolve_exact(rho0, eig, b, times);
            const Trajectory rk = engine::evolve_lindblad(rho0, h, j, b, times, 200);
            for (size_t k = 0; k < times.size(); ++k)
                worst = std::max(worst,
                                 observables::trace_distance(ex.states[k], rk.states[k]));
            check("exact and RK4 engines agree (desk scale, [0, T/4])", worst < 1e-6,
                  "max trace distance " + format_double(worst, 3));
        } catch (const std::exception& e) {
            check("exact and RK4 engines agree (desk scale, [0, T/4])", false, e.what());
        }
    }

    // observables
    {
        std::mt19937 rng(99);
        std::normal_distribution<double> gauss(0.0, 1.0);
        auto random_density = [&](int dim) {
            Operator g(dim, dim);
            for (int r = 0; r < dim; ++r)
                for (int c = 0; c < dim; ++c) g(r, c) = Complex(gauss(rng), gauss(rng));
            Operator rho = g * g.adjoint();
            return Operator(rho / rho.trace());
        };
        double worst_bound = 0.0, worst_sym = 0.0, worst_tp = 0.0, worst_pos = 0.0;
        for (int k = 0; k < 100; ++k) {
            const Operator r1 = random_density(8), r2 = random_density(8);
            const double f12 = observables::fidelity(r1, r2);
            const double f21 = observables::fidelity(r2, r1);
            worst_bound = std::max({worst_bound, -f12, f12 - 1.0});
            worst_sym = std::max(worst_sym, std::abs(f12 - f21));
            const Operator red = observables::partial_trace_b(r1, 2, 1);
            worst_tp = std::max(worst_tp, std::abs(std::real(red.trace()) - 1.0));
            Eigen::SelfAdjointEigenSolver<Operator> s(red, Eigen::EigenvaluesOnly);
            worst_pos = std::max(worst_pos, -s.eigenvalues()(0));
        }
        check("fidelity in [0,1] on random pairs", worst_bound < 1e-10);
        check("fidelity symmetric", worst_sym < 1e-10);
        check("partial trace preserves trace", worst_tp < 1e-10);
        check("partial trace positive", worst_pos < 1e-10);
    }

    // config cap
    {
        bool rejected = false;
        try {
            config::parse_json_text(R"({"model": {"N_A": 13, "N_B": 2}})");
        } catch (const ConfigError&) {
            rejected = true;
        }
        check("config rejects N beyond the cap", rejected);
    }

    rep.text = out.str();
    return rep;
}

}  // namespace dqpt::experiment

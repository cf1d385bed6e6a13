#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dqpt/errors.hpp"
#include "dqpt/experiment.hpp"
#include "dqpt/prep.hpp"

namespace py = pybind11;
using namespace dqpt;

PYBIND11_MODULE(_dqpt, m) {
    m.doc() = "Transverse-field Ising ring with current-coupled dephasing baths";
    m.attr("__version__") = kVersion;
    m.attr("MAX_SITES") = kMaxSites;

    // translators run newest-first: register the base before the subclass
    py::register_exception<Error>(m, "DqptError", PyExc_RuntimeError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

    py::class_<ModelParams>(m, "ModelParams")
        .def(py::init([](int n_a, int n_b, double tau, double h_field, double nu) {
                 ModelParams p{n_a, n_b, tau, h_field, nu};
                 p.validate();
                 return p;
             }),
             py::arg("n_a") = 6, py::arg("n_b") = 2, py::arg("tau") = 0.42,
             py::arg("h_field") = 1.0, py::arg("nu") = 5.0)
        .def_readonly("n_a", &ModelParams::n_a)
        .def_readonly("n_b", &ModelParams::n_b)
        .def_readonly("tau", &ModelParams::tau)
        .def_readonly("h_field", &ModelParams::h_field)
        .def_readonly("nu", &ModelParams::nu)
        .def_property_readonly("total_sites", &ModelParams::total_sites);

    py::class_<BathParams>(m, "BathParams")
        .def(py::init([](double gamma0, double h, double z, int modes, double beta, double omega) {
                 BathParams b{gamma0, h, z, modes, beta, omega};
                 b.validate();
                 return b;
             }),
             py::arg("gamma0") = 0.0, py::arg("h") = 0.0, py::arg("z") = 0.1,
             py::arg("modes") = 60, py::arg("beta") = std::numeric_limits<double>::infinity(),
             py::arg("omega") = 1.0)
        .def_readonly("gamma0", &BathParams::gamma0)
        .def_readonly("h", &BathParams::h)
        .def_readonly("z", &BathParams::z)
        .def_readonly("modes", &BathParams::modes)
        .def_readonly("beta", &BathParams::beta)
        .def_readonly("omega", &BathParams::omega)
        .def_property_readonly("period", &BathParams::period);

    // operator builders
    m.def("pauli", &spinops::pauli, py::arg("axis"), py::arg("site"), py::arg("n_sites"));
    m.def("ring_hamiltonian", &model::build_ring_hamiltonian, py::arg("params"),
          py::arg("closure_bond") = true);
    m.def("global_current", &model::build_global_current, py::arg("params"));
    m.def("chain_a_hamiltonian", &model::build_chain_a_hamiltonian, py::arg("params"));
    m.def("chain_b_hamiltonian", &model::build_chain_b_hamiltonian, py::arg("params"));

    // bath rates
    m.def("gamma1", &bathrates::gamma1, py::arg("t"), py::arg("bath"));
    m.def("gamma_total", &bathrates::gamma_total, py::arg("t"), py::arg("bath"));
    m.def("lamb_shift", &bathrates::lamb_shift, py::arg("t"), py::arg("bath"));
    m.def("big_gamma", &bathrates::big_gamma, py::arg("t"), py::arg("bath"));
    m.def("big_lambda", &bathrates::big_lambda, py::arg("t"), py::arg("bath"));
    m.def("max_gamma1", &experiment::max_gamma1, py::arg("bath"), py::arg("grid") = 20000);

    // state preparation
    m.def("chain_a_ground", &prep::chain_a_ground, py::arg("sign"), py::arg("n_a"));
    m.def("chain_b_ground", &prep::chain_b_ground, py::arg("params"));
    m.def("initial_state", &prep::initial_state, py::arg("params"));
    m.def("initial_density_matrix", &prep::initial_density_matrix, py::arg("params"));

    // engines
    py::class_<EigenSystem>(m, "EigenSystem")
        .def_readonly("energies", &EigenSystem::energies)
        .def_readonly("current_values", &EigenSystem::current_values)
        .def_readonly("basis", &EigenSystem::basis);
    py::class_<Trajectory>(m, "Trajectory")
        .def_readonly("times", &Trajectory::times)
        .def_readonly("states", &Trajectory::states)
        .def_readonly("engine_tag", &Trajectory::engine_tag);
    m.def("simultaneous_eigensystem", &engine::simultaneous_eigensystem, py::arg("h"),
          py::arg("j"));
    m.def(
        "evolve_exact",
        [](const Operator& rho0, const EigenSystem& eig, const BathParams& b,
           const std::vector<double>& times) { return engine::evolve_exact(rho0, eig, b, times); },
        py::arg("rho0"), py::arg("eig"), py::arg("bath"), py::arg("times"));
    m.def(
        "evolve_lindblad",
        [](const Operator& rho0, const Operator& h, const Operator& j, const BathParams& b,
           const std::vector<double>& times, int steps_per_sample) {
            return engine::evolve_lindblad(rho0, h, j, b, times, steps_per_sample);
        },
        py::arg("rho0"), py::arg("h"), py::arg("j"), py::arg("bath"), py::arg("times"),
        py::arg("steps_per_sample") = 10);

    // observables
    m.def("partial_trace_b", &observables::partial_trace_b, py::arg("rho"), py::arg("n_a"),
          py::arg("n_b"));
    m.def("fidelity", &observables::fidelity, py::arg("rho"), py::arg("sigma"));
    m.def("trace_distance", &observables::trace_distance, py::arg("a"), py::arg("b"));
    m.def("magnetization_x", &observables::magnetization_x, py::arg("rho_a"), py::arg("n_a"));
    m.def(
        "rate_function",
        [](const Operator& rho_a, int n_denom) {
            const RateResult r = observables::rate_function(rho_a, n_denom);
            return py::make_tuple(r.value, r.branch, r.diverged);
        },
        py::arg("rho_a"), py::arg("n_denom"),
        "Returns (value, branch, diverged) for the minimizing branch");
    m.def("return_probabilities", &observables::return_probabilities, py::arg("rho_a"));

    // experiment runner
    m.def(
        "run_quench_csv",
        [](const std::string& config_json) {
            const auto cfg = config::parse_json_text(config_json);
            const auto recs = experiment::compute_records(cfg);
            py::dict out;
            out["csv"] = experiment::records_to_csv(recs, cfg.output.precision);
            out["cusp_times_over_T"] = experiment::detect_cusps(recs);
            return out;
        },
        py::arg("config_json"),
        "Run the quench described by a JSON config string; returns the CSV text and cusp times");
    m.def("default_config_json",
          []() { return config::to_json_text(ExperimentConfig{}); });
}

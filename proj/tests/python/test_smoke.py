"""Smoke tests for the pybind11 module (run against the in-tree build)."""

import json
import math

import numpy as np
import pytest

try:
    import _dqpt as dq
except ImportError:  # installed layout
    from dqpt import _dqpt as dq


def test_version_and_cap():
    assert dq.__version__ == "0.1.0"
    assert dq.MAX_SITES == 14

def test_pauli_algebra():
    x = dq.pauli("x", 1, 1)
    y = dq.pauli("y", 1, 1)
    z = dq.pauli("z", 1, 1)
    assert np.allclose(x @ y - y @ x, 2j * z)


def test_conservation_and_ground_state():
    p = dq.ModelParams()
    h = dq.ring_hamiltonian(p)
    j = dq.global_current(p)
    assert np.linalg.norm(h @ j - j @ h) < 1e-10 * np.linalg.norm(h) * np.linalg.norm(j)

    g = dq.chain_b_ground(p)
    hb = dq.chain_b_hamiltonian(p)
    assert np.vdot(g, hb @ g).real == pytest.approx(-2.14158819570897, abs=1e-10)


def test_bath_rate_peak():
    b = dq.BathParams(h=0.5)
    assert dq.max_gamma1(b) == pytest.approx(0.2827, abs=1e-3)
    assert dq.gamma1(0.0, b) == 0.0
    assert dq.gamma_total(1.0, b) == 2 * dq.gamma1(1.0, b)


def test_engines_cross_validate():
    p = dq.ModelParams()
    b = dq.BathParams(gamma0=0.2827, h=0.5)
    h = dq.ring_hamiltonian(p)
    j = dq.global_current(p)
    rho0 = dq.initial_density_matrix(p)
    eig = dq.simultaneous_eigensystem(h, j)
    t = b.period / 8.0
    exact = dq.evolve_exact(rho0, eig, b, [t]).states[0]
    rk = dq.evolve_lindblad(rho0, h, j, b, [t], steps_per_sample=600).states[0]
    assert dq.trace_distance(exact, rk) < 1e-6
    assert abs(np.trace(exact) - 1) < 1e-12


def test_observables():
    p = dq.ModelParams()
    rho0 = dq.initial_density_matrix(p)
    rho_a = dq.partial_trace_b(rho0, p.n_a, p.n_b)
    value, branch, diverged = dq.rate_function(rho_a, p.total_sites)
    assert abs(value) < 1e-14 and branch == 1 and not diverged
    assert dq.magnetization_x(rho_a, p.n_a) == pytest.approx(1.0)
    pp, pm = dq.return_probabilities(rho_a)
    assert pp == pytest.approx(1.0)


def test_run_quench_csv():
    cfg = json.loads(dq.default_config_json())
    cfg["run"]["samples_per_period"] = 50
    cfg["bath"]["gamma0"] = 0.1
    out = dq.run_quench_csv(json.dumps(cfg))
    lines = out["csv"].strip().split("\n")
    assert lines[0].startswith("t_over_T,gamma_t,lambda_t,rate_function,rate_branch")
    assert len(lines) == 51
    for c in out["cusp_times_over_T"]:
        assert 0.0 < c < 1.0


def test_config_errors_map_to_value_error():
    with pytest.raises(ValueError):
        dq.run_quench_csv('{"model": {"N_Q": 6}}')


def test_max_sites_guard():
    with pytest.raises(Exception):
        dq.pauli("x", 1, 15)

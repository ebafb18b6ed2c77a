import json
import math
import os
import subprocess

import numpy as np
import pytest

qx = pytest.importorskip("qcqp_exact")


def test_eigh_and_solve_pd():
    m = np.array([[2.0, 1.0], [1.0, 0.0]])
    vals, vecs = qx.eigh(m)
    assert vals[0] == pytest.approx(1 - math.sqrt(2), abs=1e-10)
    assert vals[1] == pytest.approx(1 + math.sqrt(2), abs=1e-10)
    recon = vecs @ np.diag(vals) @ vecs.T
    assert np.allclose(recon, m, atol=1e-10)

    u = qx.solve_pd(np.diag([2.0, 4.0]), np.array([2.0, 4.0]))
    assert np.allclose(u, [1.0, 1.0])


def test_partition_pipeline():
    a = np.array([3.0, 1.0, 1.0])
    assert qx.partition_opt_sdp(a) == pytest.approx(1.0)
    assert not qx.partition_balanced(a)
    assert qx.partition_enumerate(a) == pytest.approx(1.0)

    inst = qx.partition_instance(a)
    assert inst.n == 3 and inst.m == 3
    solver = qx.Solver(inst)
    sol = solver.solve()
    assert sol["opt_sdp"] == pytest.approx(1.0, abs=1e-5)

    w = qx.partition_witness(a)
    assert abs(w["second_difference"]) > 1e-4


def test_membership_and_certify():
    inst = qx.mixed_binary_instance()
    solver = qx.Solver(inst)
    assert solver.membership(np.array([0.5, 0.5]), 0.25) == "Boundary"
    assert solver.membership(np.array([0.5, 0.5]), 1.0) == "In"
    assert solver.membership(np.array([0.5, 0.5]), 0.1) == "Out"

    cert = qx.certify_point(solver, np.array([0.5, 0.5]), 0.25, mode="soc")
    assert cert["verdict"] == "Certified"

    assert qx.mixed_binary_ssdp(0.5, 0.5, 0.25)
    assert not qx.mixed_binary_ssdp(0.5, 0.5, 0.2)
    basis = qx.mixed_binary_rounding_space(0.5, 0.5, 0.25)
    assert basis.shape[1] >= 1


def test_phi_quadrature():
    assert qx.phi(0.6) == pytest.approx(-0.4)
    assert qx.phi_semicircle_quadrature(0.5) == pytest.approx(qx.phi(0.5), abs=1e-8)


def test_instance_json_roundtrip():
    inst = qx.example1_instance()
    text = inst.to_json()
    back = qx.Instance.from_json(text)
    assert back.to_json() == text
    assert back.gamma_membership(0.0, np.array([0.0, 1.0]))
    assert not back.gamma_membership(1.0, np.array([1.0, 1.0]))


def test_experiment_determinism():
    kwargs = dict(n_list=[20], m=2, trials=4, seed=5)
    r1 = qx.run_edm_experiment(workers=1, **kwargs)
    r8 = qx.run_edm_experiment(workers=8, **kwargs)
    strip = lambda rows: [row[:-1] for row in rows]  # timing column differs
    assert strip(r1["rows"]) == strip(r8["rows"])
    assert r1["summary"] == r8["summary"]


def test_cli_in_process():
    assert qx.cli_run(["no-such-command"]) == 2
    assert qx.cli_run(["phi", "--r", "0.5"]) == 0


@pytest.mark.skipif("QCQP_EXACT_CLI" not in os.environ, reason="CLI path not set")
def test_cli_subprocess():
    cli = os.environ["QCQP_EXACT_CLI"]
    out = subprocess.run(
        [cli, "partition", "--a", "3", "1", "1", "--enumerate"],
        capture_output=True,
        text=True,
        check=True,
    )
    report = json.loads(out.stdout)
    assert report["opt_sdp_closed_form"] == pytest.approx(1.0)
    assert report["opt_enumerate"] == pytest.approx(1.0)

    bad = subprocess.run([cli, "solve"], capture_output=True, text=True)
    assert bad.returncode == 2
    assert json.loads(bad.stderr)["error"] == "UsageError"

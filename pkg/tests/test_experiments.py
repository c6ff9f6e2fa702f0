import csv

import numpy as np
import pytest

from qinfo import experiments
from qinfo.cli import main
from qinfo.entanglement import negativity, pure_entanglement
from qinfo.errors import DomainError, OptimizationFailedError
from qinfo.experiments import (
    HEADERS,
    register_bound,
    run_additivity,
    run_bloch,
    run_mems,
    run_superpos,
)
from qinfo.objects import famous_state
from qinfo.optimizer import OptimizerConfig
from qinfo.params import decode, param_space

TINY_OPT = OptimizerConfig(
    n_starts=1, anneal_sweeps=4, climb_max_iters=10, max_cycles=2,
    consistency_tol=1e-3, seed=5,
)

TINY_FLAGS = ["--opt-starts", "1", "--opt-sweeps", "2",
              "--opt-climb-iters", "3", "--opt-cycles", "1"]


def read_csv(path):
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    return rows[0], rows[1:]


# ---------------------------------------------------------------------------
# superpos


def test_superpos_endpoints_match_components():
    seed = 7
    space = param_space("pure", [2, 2])
    rng = np.random.default_rng(seed)
    psi = decode(space, rng.uniform(space.lower, space.upper))
    phi = decode(space, rng.uniform(space.lower, space.upper))
    rows = run_superpos(1, 5, seed)
    assert len(rows) == 5
    # alpha_sq = 0 is pure phi, alpha_sq = 1 is pure psi
    assert rows[0]["alpha_sq"] == 0.0
    assert rows[0]["entanglement"] == pytest.approx(
        pure_entanglement(phi, [0]), abs=1e-12
    )
    assert rows[-1]["alpha_sq"] == 1.0
    assert rows[-1]["entanglement"] == pytest.approx(
        pure_entanglement(psi, [0]), abs=1e-12
    )


def test_superpos_skip_on_cancellation(monkeypatch):
    # force both components to the same state; at relative phase pi and
    # alpha_sq = 1/2 the superposition cancels exactly
    fixed = famous_state("bell_phi_plus")
    monkeypatch.setattr(experiments, "decode", lambda space, theta: fixed)
    rows = run_superpos(1, 3, 0, n_phases=2)
    assert len(rows) == 6
    skipped = [r for r in rows if r["skip"] == 1]
    assert len(skipped) == 1
    assert skipped[0]["pair_id"] == "0p1"
    assert skipped[0]["alpha_sq"] == 0.5
    assert skipped[0]["entanglement"] == ""
    for r in rows:
        if r["skip"] == 0:
            assert r["entanglement"] == pytest.approx(1.0, abs=1e-9)


def test_superpos_custom_bound_plugin():
    register_bound("unit", lambda psi, phi, alpha, beta: 1.0)
    rows = run_superpos(1, 3, 0, bounds=["unit"])
    assert all(r["bound_name"] == "unit" for r in rows)
    assert all(r["bound_value"] == 1.0 for r in rows)


def test_superpos_stub_bounds_raise():
    with pytest.raises(NotImplementedError):
        run_superpos(1, 2, 0, bounds=["lps"])
    with pytest.raises(NotImplementedError):
        run_superpos(1, 2, 0, bounds=["gour"])


def test_superpos_too_few_alphas():
    with pytest.raises(DomainError):
        run_superpos(1, 1, 0)


# ---------------------------------------------------------------------------
# mems


def test_mems_grid_and_corners():
    rows = run_mems(0.25, TINY_OPT)
    assert len(rows) == 9
    for r in rows:
        assert r["p"] in (0.0, 0.25, 0.5)
        assert r["trace_dist"] == pytest.approx(0.5 - r["p"], abs=1e-12)
        assert -1e-9 <= r["max_concurrence"] <= 1 + 1e-9
    # both marginals maximally mixed: no unitary can entangle I/4
    center = [r for r in rows if r["p"] == 0.5 and r["q"] == 0.5][0]
    assert center["max_concurrence"] == pytest.approx(0.0, abs=1e-12)


def test_mems_corner_dominates_grid():
    opt = OptimizerConfig(n_starts=2, anneal_sweeps=20, climb_max_iters=50,
                          max_cycles=3, consistency_tol=1e-6, seed=1)
    rows = run_mems(0.25, opt)
    corner = [r for r in rows if r["p"] == 0.0 and r["q"] == 0.0][0]
    for r in rows:
        assert corner["max_concurrence"] >= r["max_concurrence"] - 5e-3
    # non-increasing in p along q = 0 within optimizer noise
    edge = sorted((r["p"], r["max_concurrence"]) for r in rows if r["q"] == 0.0)
    for (_, a), (_, b) in zip(edge, edge[1:]):
        assert b <= a + 5e-3


def test_mems_resolution_domain():
    with pytest.raises(DomainError):
        run_mems(0.3, TINY_OPT)
    with pytest.raises(DomainError):
        run_mems(0.0, TINY_OPT)


# ---------------------------------------------------------------------------
# bloch


def test_bloch_rows_and_determinism():
    a = run_bloch(3, 5, (0, 1), seed=9)
    b = run_bloch(3, 5, (0, 1), seed=9)
    assert a == b
    assert len(a) == 2 * 5  # density and pure classes
    assert {r["class"] for r in a} == {"density", "pure"}
    c = run_bloch(3, 5, (0, 1), seed=10)
    assert c != a


def test_bloch_four_level_includes_separable():
    rows = run_bloch(4, 3, (2, 7), seed=0)
    assert {r["class"] for r in rows} == {"density", "separable", "pure"}
    assert all(r["ci_index"] == 2 and r["cj_index"] == 7 for r in rows)


def test_bloch_domain_errors():
    with pytest.raises(DomainError):
        run_bloch(5, 1, (0, 1), seed=0)
    with pytest.raises(DomainError):
        run_bloch(3, 1, (0, 99), seed=0)
    with pytest.raises(DomainError):
        run_bloch(2, 1, (0, 1), seed=0, classes=["separable"])


# ---------------------------------------------------------------------------
# additivity (cheap proxy for the optimized quantity; the real measure is
# exercised in the acceptance suite)


def fake_er(rho, config=None):
    return negativity(rho, [0]), rho


def test_additivity_sample_mode(monkeypatch):
    monkeypatch.setattr(experiments, "relative_entanglement", fake_er)
    rows, summary = run_additivity(3, [2, 2], TINY_OPT, mode="sample", seed=1)
    assert len(rows) == 3
    for r in rows:
        assert r["failed"] == 0
        assert r["delta"] == pytest.approx(
            r["er_joint"] - r["er_1"] - r["er_2"], abs=1e-12
        )
    assert summary["trials"] == 3
    assert summary["failed"] == 0
    assert summary["delta_min"] <= summary["delta_mean"] <= summary["delta_max"]
    assert 0.0 <= summary["fraction_superadditive"] <= 1.0
    # von Neumann entropy is exactly additive on product states
    assert summary["entropy_additivity_max_err"] < 1e-9


def test_additivity_extremize_mode(monkeypatch):
    monkeypatch.setattr(experiments, "relative_entanglement", fake_er)
    rows, summary = run_additivity(
        1, [2, 2], TINY_OPT, mode="extremize",
        joint_opt=OptimizerConfig(n_starts=1, anneal_sweeps=2, climb_max_iters=3,
                                  max_cycles=1, seed=2),
        seed=2,
    )
    assert len(rows) == 1
    assert rows[0]["failed"] == 0
    assert summary["entropy_additivity_max_err"] < 1e-9


def test_additivity_unknown_mode():
    with pytest.raises(DomainError):
        run_additivity(1, [2, 2], TINY_OPT, mode="bogus")


# ---------------------------------------------------------------------------
# CLI


def test_cli_superpos_csv(tmp_path):
    out = tmp_path / "sp.csv"
    code = main(["superpos", "--pairs", "2", "--alphas", "3",
                 "--seed", "7", "--out", str(out)])
    assert code == 0
    header, rows = read_csv(str(out))
    assert header == HEADERS["superpos"]
    assert len(rows) == 6
    for r in rows:
        assert 0.0 <= float(r[1]) <= 1.0
        assert float(r[2]) >= -1e-12
        assert r[5] == "0"


def test_cli_superpos_deterministic(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(["superpos", "--pairs", "2", "--alphas", "4",
                 "--seed", "3", "--out", str(a)]) == 0
    assert main(["superpos", "--pairs", "2", "--alphas", "4",
                 "--seed", "3", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_cli_superpos_stub_bound_exit_code(tmp_path, capsys):
    code = main(["superpos", "--pairs", "1", "--alphas", "2",
                 "--bounds", "lps", "--out", str(tmp_path / "x.csv")])
    assert code == 2
    assert "register a real implementation" in capsys.readouterr().err


def test_cli_mems_csv(tmp_path):
    out = tmp_path / "mems.csv"
    code = main(["mems", "--resolution", "0.25", "--seed", "1",
                 "--out", str(out), *TINY_FLAGS])
    assert code == 0
    header, rows = read_csv(str(out))
    assert header == HEADERS["mems"]
    assert len(rows) == 9
    for r in rows:
        assert -1e-9 <= float(r[2]) <= 1 + 1e-9


def test_cli_bloch_deterministic(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    args = ["bloch", "--n", "2", "--samples", "10", "--seed", "4"]
    assert main(args + ["--out", str(a)]) == 0
    assert main(args + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    header, rows = read_csv(str(a))
    assert header == HEADERS["bloch"]
    assert len(rows) == 20


def test_cli_additivity_sample(tmp_path, capsys):
    out = tmp_path / "add.csv"
    code = main(["additivity", "--trials", "1", "--seed", "0", "--out", str(out),
                 "--opt-starts", "1", "--opt-sweeps", "1",
                 "--opt-climb-iters", "1", "--opt-cycles", "1"])
    assert code == 0
    header, rows = read_csv(str(out))
    assert header == HEADERS["additivity"]
    assert len(rows) == 1
    assert rows[0][5] == "0"
    err = capsys.readouterr().err
    assert "entropy_additivity_max_err" in err
    assert "fraction_superadditive" in err


def test_cli_optimization_failure_exit_code(tmp_path, monkeypatch, capsys):
    def boom(*args, **kwargs):
        raise OptimizationFailedError("no feasible point")

    monkeypatch.setattr(experiments, "run_mems", boom)
    code = main(["mems", "--resolution", "0.25", "--out", str(tmp_path / "x.csv")])
    assert code == 3
    assert "optimization failed" in capsys.readouterr().err


def test_cli_bad_flag_exits_2():
    with pytest.raises(SystemExit) as exc:
        main(["mems", "--resolution", "abc"])
    assert exc.value.code == 2


def test_cli_twelve_significant_digits(tmp_path):
    out = tmp_path / "sp.csv"
    main(["superpos", "--pairs", "1", "--alphas", "4", "--seed", "2",
          "--out", str(out)])
    _, rows = read_csv(str(out))
    # alpha_sq grid point 1/3 rendered with 12 significant digits
    assert rows[1][1] == "0.333333333333"

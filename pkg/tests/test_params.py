import numpy as np
import pytest

from qinfo.entanglement import ppt_test
from qinfo.errors import DimensionError, DomainError
from qinfo.objects import DimSpec
from qinfo.params import (
    decode,
    param_count,
    param_space,
    random_object,
    su_generators,
)

PAULI = {
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def test_su2_generators_are_paulis():
    g = su_generators(2).generators
    assert np.allclose(g[0], PAULI["x"])
    assert np.allclose(g[1], PAULI["y"])
    assert np.allclose(g[2], PAULI["z"])


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_generator_count_and_orthogonality(n):
    g = su_generators(n).generators
    assert len(g) == n * n - 1
    for i, a in enumerate(g):
        assert np.allclose(a, a.conj().T)
        assert abs(np.trace(a)) < 1e-12
        for j, b in enumerate(g):
            expected = 2.0 if i == j else 0.0
            assert np.trace(a @ b).real == pytest.approx(expected, abs=1e-12)


def test_su_generators_domain():
    with pytest.raises(DomainError):
        su_generators(1)


def test_param_counts():
    assert param_count("pure", [2, 2]) == 6
    assert param_count("cpd", [4]) == 3
    assert param_count("unitary", [2, 2]) == 16
    assert param_count("hermitian", [3]) == 9
    assert param_count("density", [2, 2]) == 19
    # (d^2 - 1) weights plus d^2 product states, each 2 params per qubit
    assert param_count("separable", [2, 2]) == 15 + 16 * 4


def test_param_space_counts_match():
    for kind in ("pure", "cpd", "unitary", "hermitian", "density", "separable"):
        space = param_space(kind, [2, 2])
        assert space.param_count == param_count(kind, [2, 2])
        assert space.bounds.shape == (space.param_count, 2)
        assert np.all(np.isfinite(space.bounds))


def test_unitary_decode_at_zero_is_identity():
    space = param_space("unitary", [2])
    u = decode(space, np.zeros(4))
    assert np.allclose(u.matrix, np.eye(2), atol=1e-12)


def test_unitary_decode_first_order_expansion():
    # U = exp(i sum t_k g_k) should match I + i sum t_k g_k to O(|t|^2)
    space = param_space("unitary", [2])
    gens = su_generators(2).u_generators
    rng = np.random.default_rng(1)
    for scale in (1e-3, 1e-4):
        t = rng.uniform(-scale, scale, size=4)
        u = decode(space, t).matrix
        linear = np.eye(2) + 1j * sum(tk * g for tk, g in zip(t, gens))
        assert np.max(np.abs(u - linear)) < 10 * scale**2


def test_cpd_decode_examples():
    space = param_space("cpd", [2])
    p = decode(space, [0.0]).probabilities
    assert np.allclose(p, [1, 0])


def test_cpd_decode_sum_exact():
    space = param_space("cpd", [8])
    rng = np.random.default_rng(2)
    for _ in range(200):
        p = decode(space, rng.uniform(space.lower, space.upper)).probabilities
        assert np.all(p >= 0)
        assert abs(np.sum(p) - 1.0) < 1e-14


def test_decode_length_mismatch():
    with pytest.raises(DimensionError):
        decode(param_space("pure", [2]), [0.1, 0.2, 0.3])


def test_decode_clamps_out_of_bounds():
    space = param_space("cpd", [2])
    p = decode(space, [-5.0]).probabilities  # clamped to angle 0
    assert np.allclose(p, [1, 0])


def test_decode_fuzz_invariants():
    rng = np.random.default_rng(3)
    for kind in ("pure", "cpd", "unitary", "hermitian", "density", "separable"):
        space = param_space(kind, [2, 2])
        for _ in range(100):
            obj = decode(space, rng.uniform(space.lower, space.upper))
            obj.validate()


def test_separable_decode_is_ppt():
    space = param_space("separable", [2, 2])
    rng = np.random.default_rng(4)
    for _ in range(200):
        rho = decode(space, rng.uniform(space.lower, space.upper))
        assert ppt_test(rho, [0])


def test_random_object_deterministic():
    a = random_object("density", [2], 123)
    b = random_object("density", [2], 123)
    assert np.array_equal(a.matrix, b.matrix)
    c = random_object("density", [2], 124)
    assert not np.allclose(a.matrix, c.matrix)


def test_random_pure_normalized():
    for seed in range(10):
        psi = random_object("pure", [2, 2], seed)
        assert np.linalg.norm(psi.amplitudes) == pytest.approx(1.0, abs=1e-12)


def test_pure_decode_global_phase_fixed():
    space = param_space("pure", [2, 2])
    rng = np.random.default_rng(5)
    for _ in range(50):
        amps = decode(space, rng.uniform(space.lower, space.upper)).amplitudes
        first = amps[np.abs(amps) > 1e-14][0]
        assert first.imag == pytest.approx(0.0, abs=1e-12)
        assert first.real > 0

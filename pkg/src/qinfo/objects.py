"""Quantum object families: states, matrices, distributions, Bloch vectors.

Basis ordering convention: particle 1 is the most significant index, i.e.
|i1 i2 ...> maps to flat index sum_k i_k * prod_{j>k} d_j. This matches
numpy's C-order reshape over the particle dimensions and is relied on by
the tensor operations in `transforms`.
"""

from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateInputError,
    DimensionError,
    DomainError,
    UnknownNameError,
    ValidationError,
)
from .numerics import DEFAULT_TOL, Tolerance, eigh_sorted


@dataclass(frozen=True)
class DimSpec:
    """Per-particle dimensions of a multi-particle system."""

    dims: tuple

    def __init__(self, dims):
        dims = tuple(int(d) for d in dims)
        if len(dims) == 0:
            raise ValidationError("DimSpec needs at least one particle")
        if any(d < 2 for d in dims):
            raise ValidationError("every particle dimension must be >= 2")
        object.__setattr__(self, "dims", dims)

    @property
    def total(self):
        return int(np.prod(self.dims))

    @property
    def n_particles(self):
        return len(self.dims)

    def __iter__(self):
        return iter(self.dims)


def _as_dimspec(dims):
    return dims if isinstance(dims, DimSpec) else DimSpec(dims)


@dataclass
class PureState:
    """Normalized complex amplitude vector over a DimSpec."""

    amplitudes: np.ndarray
    dims: DimSpec

    def __post_init__(self):
        self.dims = _as_dimspec(self.dims)
        self.amplitudes = np.asarray(self.amplitudes, dtype=complex).ravel()
        if self.amplitudes.shape[0] != self.dims.total:
            raise DimensionError(
                f"amplitude length {self.amplitudes.shape[0]} != total dim {self.dims.total}"
            )

    def validate(self, tol=DEFAULT_TOL):
        norm = np.linalg.norm(self.amplitudes)
        if abs(norm - 1.0) > tol.abs_eps + tol.rel_eps:
            raise ValidationError(f"pure state not normalized (norm {norm})")
        return self


@dataclass
class DensityMatrix:
    """Hermitian, unit-trace, PSD matrix over a DimSpec."""

    matrix: np.ndarray
    dims: DimSpec

    def __post_init__(self):
        self.dims = _as_dimspec(self.dims)
        self.matrix = np.asarray(self.matrix, dtype=complex)
        d = self.dims.total
        if self.matrix.shape != (d, d):
            raise DimensionError(f"matrix shape {self.matrix.shape} != ({d}, {d})")

    def validate(self, tol=DEFAULT_TOL):
        m = self.matrix
        if np.max(np.abs(m - m.conj().T)) > tol.abs_eps:
            raise ValidationError("density matrix not Hermitian")
        tr = np.trace(m).real
        if abs(tr - 1.0) > tol.abs_eps + tol.rel_eps:
            raise ValidationError(f"density matrix trace {tr} != 1")
        w = np.linalg.eigvalsh(m)
        if np.min(w) < -tol.abs_eps:
            raise ValidationError(f"density matrix not PSD (min eigenvalue {np.min(w):.3e})")
        return self

    def clipped(self, tol=DEFAULT_TOL):
        """Copy with tiny negative eigenvalues clipped to 0 and renormalized."""
        w, v = eigh_sorted(self.matrix)
        w = np.clip(w, 0.0, None)
        w /= np.sum(w)
        return DensityMatrix((v * w) @ v.conj().T, self.dims)


@dataclass
class CPD:
    """Classical probability distribution: nonnegative reals summing to 1."""

    probabilities: np.ndarray

    def __post_init__(self):
        self.probabilities = np.asarray(self.probabilities, dtype=float).ravel()

    def validate(self, tol=DEFAULT_TOL):
        p = self.probabilities
        if np.min(p) < -tol.abs_eps:
            raise ValidationError(f"negative probability {np.min(p)}")
        if abs(np.sum(p) - 1.0) > tol.abs_eps + tol.rel_eps:
            raise ValidationError(f"probabilities sum to {np.sum(p)}")
        return self


@dataclass
class UnitaryMatrix:
    """Square matrix with U^dagger U = I. dims is optional particle structure."""

    matrix: np.ndarray
    dims: DimSpec = None

    def __post_init__(self):
        self.matrix = np.asarray(self.matrix, dtype=complex)
        if self.matrix.ndim != 2 or self.matrix.shape[0] != self.matrix.shape[1]:
            raise DimensionError("unitary must be square")
        if self.dims is not None:
            self.dims = _as_dimspec(self.dims)
            if self.dims.total != self.matrix.shape[0]:
                raise DimensionError("dims do not match matrix size")

    def validate(self, tol=DEFAULT_TOL):
        u = self.matrix
        err = np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0])))
        if err > tol.abs_eps + tol.rel_eps:
            raise ValidationError(f"not unitary (deviation {err:.3e})")
        return self


@dataclass
class HermitianMatrix:
    """Square matrix with M = M^dagger. dims is optional particle structure."""

    matrix: np.ndarray
    dims: DimSpec = None

    def __post_init__(self):
        self.matrix = np.asarray(self.matrix, dtype=complex)
        if self.matrix.ndim != 2 or self.matrix.shape[0] != self.matrix.shape[1]:
            raise DimensionError("Hermitian matrix must be square")
        if self.dims is not None:
            self.dims = _as_dimspec(self.dims)
            if self.dims.total != self.matrix.shape[0]:
                raise DimensionError("dims do not match matrix size")

    def validate(self, tol=DEFAULT_TOL):
        m = self.matrix
        err = np.max(np.abs(m - m.conj().T))
        if err > tol.abs_eps:
            raise ValidationError(f"not Hermitian (deviation {err:.3e})")
        return self


@dataclass
class BlochVector:
    """Expansion coefficients over the traceless generator basis."""

    components: np.ndarray

    def __post_init__(self):
        self.components = np.asarray(self.components, dtype=float).ravel()


# ---------------------------------------------------------------------------
# constructors


def make_pure(amplitudes, dims):
    """Build a normalized PureState, dividing by the vector norm."""
    dims = _as_dimspec(dims)
    amps = np.asarray(amplitudes, dtype=complex).ravel()
    if amps.shape[0] != dims.total:
        raise DimensionError(f"length {amps.shape[0]} != total dim {dims.total}")
    norm = np.linalg.norm(amps)
    if norm <= 1e-300:
        raise DegenerateInputError("cannot normalize the zero vector")
    return PureState(amps / norm, dims)


def make_density(m, dims, tol=DEFAULT_TOL):
    """Build a DensityMatrix, raising ValidationError on invariant violation."""
    rho = DensityMatrix(m, dims)
    rho.validate(tol)
    return rho


def make_cpd(p, tol=DEFAULT_TOL):
    """Build a CPD, clipping negatives within tolerance and validating."""
    cpd = CPD(p)
    cpd.validate(tol)
    cpd.probabilities = np.clip(cpd.probabilities, 0.0, None)
    return cpd


def pure_to_density(psi):
    """Outer product |psi><psi| as a DensityMatrix with the same dims."""
    a = psi.amplitudes
    return DensityMatrix(np.outer(a, a.conj()), psi.dims)


# ---------------------------------------------------------------------------
# famous states and gates

_SQ2 = 1.0 / np.sqrt(2.0)


def famous_state(name, dims=None):
    """Standard named states.

    bell_phi_plus / bell_phi_minus / bell_psi_plus / singlet are two-qubit
    pure states. ghz and w take the qubit count from dims (default 3 resp. 3).
    max_mixed returns I/d for the given dims (default one qubit).
    """
    if name in ("bell_phi_plus", "bell_phi_minus", "bell_psi_plus", "singlet"):
        amps = {
            "bell_phi_plus": [1, 0, 0, 1],
            "bell_phi_minus": [1, 0, 0, -1],
            "bell_psi_plus": [0, 1, 1, 0],
            "singlet": [0, 1, -1, 0],
        }[name]
        return make_pure(amps, DimSpec([2, 2]))
    if name in ("ghz", "w"):
        dims = _as_dimspec(dims) if dims is not None else DimSpec([2, 2, 2])
        if any(d != 2 for d in dims):
            raise DomainError(f"{name} state is defined for qubits only")
        n = dims.n_particles
        if n < 2:
            raise DomainError(f"{name} state needs at least 2 qubits")
        amps = np.zeros(2**n, dtype=complex)
        if name == "ghz":
            amps[0] = amps[-1] = 1.0
        else:
            for k in range(n):
                amps[2**k] = 1.0
        return make_pure(amps, dims)
    if name == "max_mixed":
        dims = _as_dimspec(dims) if dims is not None else DimSpec([2])
        d = dims.total
        return DensityMatrix(np.eye(d) / d, dims)
    raise UnknownNameError(f"unknown state name {name!r}")


_GATES = {
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
    "h": _SQ2 * np.array([[1, 1], [1, -1]], dtype=complex),
    "s": np.array([[1, 0], [0, 1j]], dtype=complex),
    "t": np.array([[1, 0], [0, np.exp(1j * np.pi / 4)]], dtype=complex),
    "cnot": np.array(
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
    ),
    "swap": np.array(
        [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex
    ),
    "cz": np.diag([1, 1, 1, -1]).astype(complex),
    "toffoli": None,  # built below
}

_toff = np.eye(8, dtype=complex)
_toff[[6, 7], :] = _toff[[7, 6], :]
_GATES["toffoli"] = _toff
del _toff

_GATE_DIMS = {"x": [2], "y": [2], "z": [2], "h": [2], "s": [2], "t": [2],
              "cnot": [2, 2], "swap": [2, 2], "cz": [2, 2], "toffoli": [2, 2, 2]}


def famous_gate(name):
    """Standard named gates as UnitaryMatrix (computational-basis convention)."""
    if name not in _GATES:
        raise UnknownNameError(f"unknown gate name {name!r}")
    return UnitaryMatrix(_GATES[name].copy(), DimSpec(_GATE_DIMS[name]))


# ---------------------------------------------------------------------------
# Bloch coordinates

PAULI_X = _GATES["x"]
PAULI_Y = _GATES["y"]
PAULI_Z = _GATES["z"]


def bloch_to_density(n, tol=DEFAULT_TOL):
    """Single-qubit state 1/2 (I + n . sigma) from a length-3 Bloch vector."""
    comps = n.components if isinstance(n, BlochVector) else np.asarray(n, dtype=float)
    if comps.shape != (3,):
        raise DimensionError("bloch_to_density takes a length-3 vector")
    norm = np.linalg.norm(comps)
    if norm > 1.0 + tol.abs_eps:
        raise ValidationError(f"Bloch vector norm {norm} > 1: not a state")
    m = 0.5 * (
        np.eye(2, dtype=complex)
        + comps[0] * PAULI_X
        + comps[1] * PAULI_Y
        + comps[2] * PAULI_Z
    )
    return DensityMatrix(m, DimSpec([2]))


def density_to_bloch(rho):
    """Generator-basis coordinates c_i = tr(rho g_i) / 2, length n^2 - 1.

    Uses the traceless generator set of `params` (Pauli matrices at n = 2),
    so rho = I/n + sum_i c_i g_i reconstructs the state at every n. Note
    the single-qubit convention mismatch with bloch_to_density: the
    traditional unit-ball vector is 2c, so pure states sit on the shell
    sum c_i^2 = (n - 1) / (2n) (= 1/4 for one qubit).
    """
    from .params import su_generators

    n = rho.dims.total
    gens = su_generators(n)
    comps = [np.trace(rho.matrix @ g).real / 2.0 for g in gens.generators]
    return BlochVector(np.array(comps))


# ---------------------------------------------------------------------------
# JSON serialization


def _matrix_to_json(m):
    m = np.asarray(m, dtype=complex)
    return {"re": m.real.tolist(), "im": m.imag.tolist()}


def _matrix_from_json(d):
    return np.asarray(d["re"], dtype=float) + 1j * np.asarray(d["im"], dtype=float)


def to_json(obj):
    """JSON-compatible dict for any qinfo object family."""
    if isinstance(obj, PureState):
        return {"type": "pure", "dims": list(obj.dims),
                **_matrix_to_json(obj.amplitudes)}
    if isinstance(obj, DensityMatrix):
        return {"type": "density", "dims": list(obj.dims),
                **_matrix_to_json(obj.matrix)}
    if isinstance(obj, UnitaryMatrix):
        return {"type": "unitary",
                "dims": list(obj.dims) if obj.dims is not None else None,
                **_matrix_to_json(obj.matrix)}
    if isinstance(obj, HermitianMatrix):
        return {"type": "hermitian",
                "dims": list(obj.dims) if obj.dims is not None else None,
                **_matrix_to_json(obj.matrix)}
    if isinstance(obj, CPD):
        return {"type": "cpd", "p": obj.probabilities.tolist()}
    if isinstance(obj, BlochVector):
        return {"type": "bloch", "components": obj.components.tolist()}
    raise DomainError(f"cannot serialize {type(obj).__name__}")


def from_json(d):
    """Inverse of to_json. Round trip is exact up to float formatting."""
    kind = d.get("type")
    if kind == "pure":
        return PureState(_matrix_from_json(d), DimSpec(d["dims"]))
    if kind == "density":
        return DensityMatrix(_matrix_from_json(d), DimSpec(d["dims"]))
    if kind == "unitary":
        dims = DimSpec(d["dims"]) if d.get("dims") else None
        return UnitaryMatrix(_matrix_from_json(d), dims)
    if kind == "hermitian":
        dims = DimSpec(d["dims"]) if d.get("dims") else None
        return HermitianMatrix(_matrix_from_json(d), dims)
    if kind == "cpd":
        return CPD(np.asarray(d["p"], dtype=float))
    if kind == "bloch":
        return BlochVector(np.asarray(d["components"], dtype=float))
    raise DomainError(f"cannot deserialize type {kind!r}")

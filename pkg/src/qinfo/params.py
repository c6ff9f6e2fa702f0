"""Parametrizations: decoders from bounded real vectors onto object families.

Each object family (pure states, CPDs, unitaries, Hermitian matrices,
density matrices, separable density matrices) gets a ParamSpace whose
decode is total on the bounding box (out-of-bounds inputs are clamped).
Random sampling draws parameters uniformly within the bounds; this is NOT
uniform in any natural measure on the object manifold (no Haar, no
Hilbert-Schmidt) -- it is plain parameter-space sampling.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, DomainError
from .numerics import expi_hermitian
from .objects import (
    CPD,
    DensityMatrix,
    DimSpec,
    HermitianMatrix,
    PureState,
    UnitaryMatrix,
    _as_dimspec,
)

KINDS = ("pure", "cpd", "unitary", "hermitian", "density", "separable")


@dataclass(frozen=True)
class GeneratorSet:
    """Traceless Hermitian generator basis of SU(n), tr(g_i g_j) = 2 delta_ij."""

    n: int
    generators: tuple

    @property
    def u_generators(self):
        """SU(n) generators extended by the identity, spanning u(n)."""
        return self.generators + (np.eye(self.n, dtype=complex),)


_GEN_CACHE = {}


def su_generators(n):
    """Generalized Gell-Mann construction of the SU(n) generator basis.

    Order: the n(n-1)/2 symmetric pair generators, then the n(n-1)/2
    antisymmetric ones (pairs in lexicographic order), then the n-1
    diagonal generators. For n = 2 this is (sigma_x, sigma_y, sigma_z).
    """
    if n < 2:
        raise DomainError("su_generators requires n >= 2")
    if n in _GEN_CACHE:
        return _GEN_CACHE[n]
    sym, asym, diag = [], [], []
    for j in range(n):
        for k in range(j + 1, n):
            m = np.zeros((n, n), dtype=complex)
            m[j, k] = m[k, j] = 1.0
            sym.append(m)
            m = np.zeros((n, n), dtype=complex)
            m[j, k] = -1j
            m[k, j] = 1j
            asym.append(m)
    for l in range(1, n):
        d = np.zeros(n, dtype=complex)
        d[:l] = 1.0
        d[l] = -l
        diag.append(np.diag(d) * np.sqrt(2.0 / (l * (l + 1))))
    gens = GeneratorSet(n, tuple(sym + asym + diag))
    _GEN_CACHE[n] = gens
    return gens


@dataclass(frozen=True)
class ParamSpace:
    """A decode target: object kind, particle dims, and per-parameter bounds."""

    kind: str
    dims: DimSpec
    param_count: int
    bounds: np.ndarray  # shape (param_count, 2)

    @property
    def lower(self):
        return self.bounds[:, 0]

    @property
    def upper(self):
        return self.bounds[:, 1]


def param_count(kind, dims):
    """Number of real parameters for (kind, dims)."""
    dims = _as_dimspec(dims)
    d = dims.total
    if kind == "pure":
        return 2 * d - 2
    if kind == "cpd":
        return d - 1
    if kind in ("unitary", "hermitian"):
        return d * d
    if kind == "density":
        return (d - 1) + d * d
    if kind == "separable":
        return (d * d - 1) + d * d * sum(2 * dk - 2 for dk in dims)
    raise DomainError(f"unknown parametrization kind {kind!r}")


def _pure_bounds(d):
    return [(0.0, np.pi / 2)] * (d - 1) + [(0.0, 2 * np.pi)] * (d - 1)


def param_space(kind, dims, hermitian_bound=1.0):
    """Build the ParamSpace for an object family.

    hermitian_bound sets the box for Hermitian matrix entries (diagonal
    values and off-diagonal real/imaginary parts).
    """
    dims = _as_dimspec(dims)
    d = dims.total
    if kind == "pure":
        bounds = _pure_bounds(d)
    elif kind == "cpd":
        bounds = [(0.0, np.pi / 2)] * (d - 1)
    elif kind == "unitary":
        bounds = [(-np.pi, np.pi)] * (d * d)
    elif kind == "hermitian":
        b = float(hermitian_bound)
        bounds = [(-b, b)] * (d * d)
    elif kind == "density":
        bounds = [(0.0, np.pi / 2)] * (d - 1) + [(-np.pi, np.pi)] * (d * d)
    elif kind == "separable":
        bounds = [(0.0, np.pi / 2)] * (d * d - 1)
        per_state = []
        for dk in dims:
            per_state += _pure_bounds(dk)
        bounds += per_state * (d * d)
    else:
        raise DomainError(f"unknown parametrization kind {kind!r}")
    bounds = np.asarray(bounds, dtype=float)
    return ParamSpace(kind, dims, len(bounds), bounds)


# ---------------------------------------------------------------------------
# decoding


def _hyperspherical(angles):
    """Batched hyperspherical coordinates: (B, m-1) angles -> (B, m) radii.

    All radii are nonnegative for angles in [0, pi/2] and the squared
    radii telescope to exactly 1 (up to rounding).
    """
    angles = np.atleast_2d(angles)
    B, k = angles.shape
    m = k + 1
    c = np.cos(angles)
    s = np.sin(angles)
    r = np.empty((B, m))
    r[:, 0] = c[:, 0]
    if m > 2:
        sp = np.cumprod(s, axis=1)
        r[:, 1:-1] = sp[:, :-1] * c[:, 1:]
        r[:, -1] = sp[:, -1]
    else:
        r[:, -1] = s[:, 0]
    return r


def _pure_amplitudes(params, d):
    """Batched pure-state amplitudes from (B, 2d-2) parameter rows."""
    params = np.atleast_2d(params)
    angles = params[:, : d - 1]
    phases = params[:, d - 1 :]
    r = _hyperspherical(angles)
    amps = r.astype(complex)
    amps[:, 1:] *= np.exp(1j * phases)
    return amps


def _fix_global_phase(amps):
    # first nonzero amplitude made real nonnegative
    for k in range(amps.shape[0]):
        if np.abs(amps[k]) > 1e-14:
            amps = amps * (np.abs(amps[k]) / amps[k])
            break
    return amps


def _separable_matrix(params, dims):
    """Mixture of d^2 pure product states per the convex (Caratheodory) layout."""
    d = dims.total
    n_terms = d * d
    weights = _hyperspherical(params[None, : n_terms - 1])[0] ** 2
    offset = n_terms - 1
    states = np.ones((n_terms, 1), dtype=complex)
    for dk in dims:
        block = 2 * dk - 2
        sub = params[offset : offset + n_terms * block].reshape(n_terms, block)
        amps = _pure_amplitudes(sub, dk)
        states = (states[:, :, None] * amps[:, None, :]).reshape(n_terms, -1)
        offset += n_terms * block
    return np.einsum("b,bi,bj->ij", weights, states, states.conj())


def decode(space, params):
    """Decode a real parameter vector into an object of space.kind.

    Out-of-bounds entries are clamped to the box, so decode is total.
    """
    params = np.asarray(params, dtype=float).ravel()
    if params.shape[0] != space.param_count:
        raise DimensionError(
            f"expected {space.param_count} parameters, got {params.shape[0]}"
        )
    params = np.clip(params, space.lower, space.upper)
    dims = space.dims
    d = dims.total
    kind = space.kind

    if kind == "pure":
        amps = _fix_global_phase(_pure_amplitudes(params, d)[0])
        return PureState(amps, dims)
    if kind == "cpd":
        r = _hyperspherical(params[None, :])[0]
        return CPD(r * r)
    if kind == "unitary":
        gens = su_generators(d).u_generators
        h = np.tensordot(params, np.stack(gens), axes=1)
        return UnitaryMatrix(expi_hermitian(h), dims)
    if kind == "hermitian":
        m = np.zeros((d, d), dtype=complex)
        np.fill_diagonal(m, params[:d])
        idx = d
        for j in range(d):
            for k in range(j + 1, d):
                m[j, k] = params[idx] + 1j * params[idx + 1]
                m[k, j] = params[idx] - 1j * params[idx + 1]
                idx += 2
        return HermitianMatrix(m, dims)
    if kind == "density":
        r = _hyperspherical(params[None, : d - 1])[0]
        p = r * r
        gens = su_generators(d).u_generators
        h = np.tensordot(params[d - 1 :], np.stack(gens), axes=1)
        u = expi_hermitian(h)
        return DensityMatrix((u * p) @ u.conj().T, dims)
    if kind == "separable":
        return DensityMatrix(_separable_matrix(params, dims), dims)
    raise DomainError(f"unknown parametrization kind {kind!r}")


def random_object(kind, dims, seed):
    """Uniform-in-parameter-space random object; deterministic in the seed."""
    space = param_space(kind, dims)
    rng = np.random.default_rng(seed)
    params = rng.uniform(space.lower, space.upper)
    return decode(space, params)

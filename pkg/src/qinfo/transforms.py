"""Structural operations on multi-particle objects.

Particle indices are 0-based here (CLI-facing text is 1-based). Tensor
representations use one axis per particle for vectors and row axes
followed by column axes for matrices, both in the computational-basis
ordering fixed in `objects`.
"""

import numpy as np

from .errors import DimensionError, DomainError, ValidationError
from .objects import (
    DensityMatrix,
    DimSpec,
    HermitianMatrix,
    PureState,
    UnitaryMatrix,
    _as_dimspec,
)
from .params import su_generators


def _check_particles(dims, subset):
    subset = sorted(set(int(k) for k in subset))
    if any(k < 0 or k >= dims.n_particles for k in subset):
        raise DimensionError(f"particle index out of range for dims {tuple(dims)}")
    return subset


def to_tensor(obj):
    """Tensor view: one axis per particle (vectors) or row axes then column
    axes (matrices)."""
    if isinstance(obj, PureState):
        return obj.amplitudes.reshape(tuple(obj.dims))
    if isinstance(obj, (DensityMatrix, HermitianMatrix, UnitaryMatrix)):
        if obj.dims is None:
            raise DimensionError("matrix has no particle structure (dims is None)")
        shape = tuple(obj.dims) + tuple(obj.dims)
        return obj.matrix.reshape(shape)
    raise DomainError(f"cannot tensorize {type(obj).__name__}")


def from_tensor(tensor, dims, kind=None):
    """Inverse of to_tensor.

    Rank len(dims) tensors become PureStates, rank 2*len(dims) become
    DensityMatrix by default; kind in {"pure", "density", "hermitian",
    "unitary"} overrides.
    """
    dims = _as_dimspec(dims)
    tensor = np.asarray(tensor, dtype=complex)
    n = dims.n_particles
    d = dims.total
    if tensor.ndim == n:
        if tensor.shape != tuple(dims):
            raise DimensionError("tensor shape does not match dims")
        return PureState(tensor.reshape(d), dims)
    if tensor.ndim == 2 * n:
        if tensor.shape != tuple(dims) + tuple(dims):
            raise DimensionError("tensor shape does not match dims")
        m = tensor.reshape(d, d)
        if kind == "hermitian":
            return HermitianMatrix(m, dims)
        if kind == "unitary":
            return UnitaryMatrix(m, dims)
        return DensityMatrix(m, dims)
    raise DimensionError("tensor rank matches neither a vector nor a matrix")


def partial_trace(rho, traced):
    """Trace out the given particles; remaining particles keep their order."""
    dims = rho.dims
    traced = _check_particles(dims, traced)
    if not traced:
        raise DomainError("traced set must be non-empty")
    if len(traced) == dims.n_particles:
        raise DomainError("tracing every particle yields a scalar; use the trace")
    n = dims.n_particles
    t = to_tensor(rho)
    for k in reversed(traced):
        t = np.trace(t, axis1=k, axis2=k + t.ndim // 2)
    keep = [d for i, d in enumerate(dims) if i not in traced]
    new_dims = DimSpec(keep)
    return DensityMatrix(t.reshape(new_dims.total, new_dims.total), new_dims)


def partial_transpose(rho, subset):
    """Transpose the tensor indices of the chosen particles.

    Returns a HermitianMatrix: the result has unit trace but may have
    negative eigenvalues (which is the point of the PPT test).
    """
    dims = rho.dims
    subset = _check_particles(dims, subset)
    if not subset:
        raise DomainError("subset must be non-empty")
    n = dims.n_particles
    t = to_tensor(rho)
    axes = list(range(2 * n))
    for k in subset:
        axes[k], axes[k + n] = axes[k + n], axes[k]
    t = t.transpose(axes)
    d = dims.total
    return HermitianMatrix(t.reshape(d, d), dims)


def reorder_particles(obj, perm):
    """Relabel particles by a permutation: new particle i is old perm[i]."""
    if isinstance(obj, PureState):
        dims = obj.dims
    else:
        dims = obj.dims
        if dims is None:
            raise DimensionError("matrix has no particle structure (dims is None)")
    n = dims.n_particles
    perm = [int(p) for p in perm]
    if sorted(perm) != list(range(n)):
        raise DomainError(f"{perm} is not a permutation of 0..{n - 1}")
    new_dims = DimSpec([dims.dims[p] for p in perm])
    t = to_tensor(obj)
    if isinstance(obj, PureState):
        return PureState(t.transpose(perm).reshape(new_dims.total), new_dims)
    axes = perm + [p + n for p in perm]
    m = t.transpose(axes).reshape(new_dims.total, new_dims.total)
    return type(obj)(m, new_dims)


def to_generator_basis(m, tol_abs=1e-9):
    """Expansion (c0, c1, ..., c_{n^2-1}) with m = c0 I + sum_i c_i g_i.

    c0 = tr(m)/n and c_i = tr(m g_i)/2 under the tr(g_i g_j) = 2 delta_ij
    normalization. Input must be Hermitian.
    """
    mat = m.matrix if isinstance(m, HermitianMatrix) else np.asarray(m, dtype=complex)
    if np.max(np.abs(mat - mat.conj().T)) > tol_abs:
        raise ValidationError("to_generator_basis requires a Hermitian matrix")
    n = mat.shape[0]
    gens = su_generators(n)
    coeffs = np.empty(n * n)
    coeffs[0] = np.trace(mat).real / n
    for i, g in enumerate(gens.generators):
        coeffs[i + 1] = np.trace(mat @ g).real / 2.0
    return coeffs


def from_generator_basis(coeffs, n):
    """Rebuild the Hermitian matrix from its generator-basis coefficients."""
    coeffs = np.asarray(coeffs, dtype=float).ravel()
    if coeffs.shape[0] != n * n:
        raise DimensionError(f"expected {n * n} coefficients, got {coeffs.shape[0]}")
    gens = su_generators(n)
    m = coeffs[0] * np.eye(n, dtype=complex)
    for c, g in zip(coeffs[1:], gens.generators):
        m = m + c * g
    return HermitianMatrix(m)

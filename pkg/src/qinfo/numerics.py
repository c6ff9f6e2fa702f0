"""Dense complex linear algebra helpers and numerical hygiene.

All matrix-valued quantities are plain numpy arrays (complex128).
Everything here is a pure function; safe to call concurrently.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, NotSpannableError, ValidationError


@dataclass(frozen=True)
class Tolerance:
    """Absolute/relative tolerance pair used throughout the package."""

    abs_eps: float = 1e-9
    rel_eps: float = 1e-9

    def __post_init__(self):
        if not (self.abs_eps > 0 and self.rel_eps > 0):
            raise ValidationError("tolerances must be strictly positive")


DEFAULT_TOL = Tolerance()


def approx_equal(a, b, tol=DEFAULT_TOL):
    """True iff the max entrywise |a - b| is within abs_eps + rel_eps * scale.

    The scale is the largest entry magnitude across both inputs.
    """
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise DimensionError(f"shape mismatch: {a.shape} vs {b.shape}")
    if a.size == 0:
        return True
    scale = max(np.max(np.abs(a)), np.max(np.abs(b)))
    return float(np.max(np.abs(a - b))) <= tol.abs_eps + tol.rel_eps * scale


def chop(a, tol=DEFAULT_TOL):
    """Clean tiny numerical noise from an array.

    Real and imaginary parts within abs_eps of an integer are snapped to
    that integer (which in particular zeroes tiny imaginary parts).
    Idempotent.
    """
    a = np.asarray(a, dtype=complex)
    re = a.real.copy()
    im = a.imag.copy()
    for part in (re, im):
        rounded = np.round(part)
        near = np.abs(part - rounded) <= tol.abs_eps
        part[near] = rounded[near]
    return re + 1j * im


def gram_schmidt(vectors, tol=DEFAULT_TOL):
    """Orthonormalize a list of complex vectors (modified Gram-Schmidt).

    Vectors whose residual norm falls below abs_eps are dropped, so the
    output length equals the rank of the input set.
    """
    vectors = [np.asarray(v, dtype=complex) for v in vectors]
    if not vectors:
        return []
    length = vectors[0].shape[0]
    for v in vectors:
        if v.shape != (length,):
            raise DimensionError("all vectors must have the same length")
    out = []
    for v in vectors:
        w = v.copy()
        for u in out:
            w -= np.vdot(u, w) * u
        # second pass for numerical stability
        for u in out:
            w -= np.vdot(u, w) * u
        norm = np.linalg.norm(w)
        if norm > tol.abs_eps:
            out.append(w / norm)
    return out


def span_coefficients(m, basis, tol=DEFAULT_TOL):
    """Coefficients c with m = sum_i c_i basis_i, via least squares.

    Raises NotSpannableError if the residual exceeds the tolerance.
    """
    m = np.asarray(m, dtype=complex)
    cols = []
    for b in basis:
        b = np.asarray(b, dtype=complex)
        if b.shape != m.shape:
            raise DimensionError("basis matrices must match the target shape")
        cols.append(b.ravel())
    A = np.column_stack(cols)
    y = m.ravel()
    c, *_ = np.linalg.lstsq(A, y, rcond=None)
    residual = np.linalg.norm(A @ c - y)
    if residual > tol.abs_eps + tol.rel_eps * np.linalg.norm(y):
        raise NotSpannableError(f"matrix outside span (residual {residual:.3e})")
    return c


def eigh_sorted(h):
    """Eigendecomposition of a Hermitian matrix with a fixed convention.

    Eigenvalues ascending; each eigenvector's largest-magnitude component
    is rotated to be real and nonnegative, so repeated runs produce
    identical output.
    """
    h = np.asarray(h, dtype=complex)
    w, v = np.linalg.eigh(h)
    for k in range(v.shape[1]):
        col = v[:, k]
        idx = int(np.argmax(np.abs(col)))
        pivot = col[idx]
        if np.abs(pivot) > 0:
            v[:, k] = col * (np.abs(pivot) / pivot)
    return w, v


def hermitian_fn(h, fn):
    """Apply a scalar function to a Hermitian matrix via its spectrum."""
    w, v = eigh_sorted(h)
    return (v * fn(w)) @ v.conj().T


def sqrtm_psd(h, clip_eps=0.0):
    """Principal square root of a PSD Hermitian matrix.

    Eigenvalues below -clip_eps are a validation error; tiny negatives
    are clipped to zero.
    """
    w, v = eigh_sorted(h)
    if np.min(w) < -max(clip_eps, 1e-9):
        raise ValidationError(f"matrix not PSD (min eigenvalue {np.min(w):.3e})")
    w = np.clip(w, 0.0, None)
    # snap eigensolver noise to exact zero; sqrt would amplify it to ~1e-8
    if w.size and w[-1] > 0:
        w[w < 1e-14 * w[-1]] = 0.0
    return (v * np.sqrt(w)) @ v.conj().T


def expi_hermitian(h):
    """exp(i*h) for Hermitian h, computed spectrally (always unitary)."""
    w, v = eigh_sorted(h)
    return (v * np.exp(1j * w)) @ v.conj().T

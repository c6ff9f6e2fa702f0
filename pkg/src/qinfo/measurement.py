"""Measurement simulation: orthogonal, POVM, and a weak-measurement model.

The weak measurement is a symmetric two-outcome Kraus pair
K_pm = sqrt((I +- eps A) / 2). At eps = 0 the mixture is the input state;
at eps = 1 with a +-1-spectrum observable it reduces to the orthogonal
measurement of the observable's eigenprojectors. These two limits are the
model's contract.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ValidationError
from .numerics import DEFAULT_TOL, sqrtm_psd
from .objects import CPD, DensityMatrix, HermitianMatrix

_P_FLOOR_FACTOR = 1.0  # outcomes below tol.abs_eps are flagged


@dataclass
class MeasurementOutcome:
    """Outcome probabilities, per-outcome collapsed states, and their mixture.

    valid[i] is False for (near) zero-probability outcomes, whose
    post_states entry is a maximally mixed placeholder.
    """

    probabilities: CPD
    post_states: list
    mixture: DensityMatrix
    valid: list


def _as_matrices(ops):
    out = []
    for op in ops:
        out.append(op.matrix if isinstance(op, HermitianMatrix) else np.asarray(op, dtype=complex))
    return out


def _outcome(rho, kraus, tol):
    """Shared post-processing: probabilities, collapsed states, mixture."""
    d = rho.dims.total
    probs = []
    posts = []
    valid = []
    mixture = np.zeros((d, d), dtype=complex)
    for k in kraus:
        term = k @ rho.matrix @ k.conj().T
        p = max(np.trace(term).real, 0.0)
        mixture += term
        probs.append(p)
        if p > tol.abs_eps:
            posts.append(DensityMatrix(term / p, rho.dims))
            valid.append(True)
        else:
            posts.append(DensityMatrix(np.eye(d) / d, rho.dims))
            valid.append(False)
    probs = np.asarray(probs)
    probs = probs / np.sum(probs)
    return MeasurementOutcome(CPD(probs), posts, DensityMatrix(mixture, rho.dims), valid)


def orthogonal_measure(rho, projectors, tol=DEFAULT_TOL):
    """Projective measurement: p_i = tr(P_i rho), post_i = P_i rho P_i / p_i.

    The projectors must be mutually orthogonal and complete.
    """
    ps = _as_matrices(projectors)
    d = rho.dims.total
    check_tol = 100 * tol.abs_eps
    for i, p in enumerate(ps):
        for j, q in enumerate(ps):
            expected = p if i == j else np.zeros_like(p)
            if np.max(np.abs(p @ q - expected)) > check_tol:
                raise ValidationError("projectors are not mutually orthogonal projectors")
    if np.max(np.abs(sum(ps) - np.eye(d))) > check_tol:
        raise ValidationError("projectors do not sum to the identity")
    return _outcome(rho, ps, tol)


def povm_measure(rho, elements, tol=DEFAULT_TOL):
    """POVM measurement: p_i = tr(E_i rho), post states via Kraus K_i = sqrt(E_i)."""
    es = _as_matrices(elements)
    d = rho.dims.total
    check_tol = 100 * tol.abs_eps
    kraus = []
    for e in es:
        if np.max(np.abs(e - e.conj().T)) > check_tol:
            raise ValidationError("POVM element not Hermitian")
        w = np.linalg.eigvalsh(e)
        if np.min(w) < -check_tol:
            raise ValidationError(f"POVM element not PSD (min eigenvalue {np.min(w):.3e})")
        kraus.append(sqrtm_psd(e, clip_eps=check_tol))
    if np.max(np.abs(sum(es) - np.eye(d))) > check_tol:
        raise ValidationError("POVM elements do not sum to the identity")
    return _outcome(rho, kraus, tol)


def weak_measure(rho, observable, strength, tol=DEFAULT_TOL):
    """Two-outcome weak measurement of an observable with spectrum in [-1, 1]."""
    a = observable.matrix if isinstance(observable, HermitianMatrix) else np.asarray(
        observable, dtype=complex
    )
    if not 0.0 <= strength <= 1.0:
        raise DomainError(f"strength {strength} outside [0, 1]")
    w = np.linalg.eigvalsh(a)
    if np.min(w) < -1.0 - 100 * tol.abs_eps or np.max(w) > 1.0 + 100 * tol.abs_eps:
        raise DomainError("observable spectrum must lie in [-1, 1]")
    d = rho.dims.total
    eye = np.eye(d)
    k_plus = sqrtm_psd((eye + strength * a) / 2.0, clip_eps=100 * tol.abs_eps)
    k_minus = sqrtm_psd((eye - strength * a) / 2.0, clip_eps=100 * tol.abs_eps)
    return _outcome(rho, [k_plus, k_minus], tol)

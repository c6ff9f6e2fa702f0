"""Entropies, divergences, distances, majorization, mutual information.

All logarithms are base 2: entropies come out in bits and Bell-state
benchmarks are integers. Divergences on disjoint supports return the
distinguished value DIVERGENCE (= +inf) rather than raising, so
optimizers can rank infeasible points.
"""

import numpy as np

from .errors import DimensionError, DomainError
from .numerics import DEFAULT_TOL, sqrtm_psd
from .objects import CPD, DensityMatrix, PureState, pure_to_density
from .transforms import partial_trace

DIVERGENCE = float("inf")

DISTANCE_KINDS = (
    "hilbert_schmidt",
    "trace",
    "fidelity",
    "bures_distance",
    "bures_angle",
    "fubini_study",
)

# eigenvalues below _SUPPORT_EPS count as exact zeros (support boundary);
# small positive eigenvalues above it contribute large finite log terms
_SUPPORT_EPS = 1e-15
_OVERLAP_EPS = 1e-12


def is_divergent(x):
    """True for the infinite-divergence signal."""
    return np.isinf(x)


def _probs(p):
    return p.probabilities if isinstance(p, CPD) else np.asarray(p, dtype=float)


def _as_density(a):
    if isinstance(a, PureState):
        return pure_to_density(a)
    return a


def shannon_entropy(p):
    """-sum p_i log2 p_i, with 0 log 0 = 0. In [0, log2 d]."""
    q = _probs(p)
    q = q[q > 0]
    return float(-np.sum(q * np.log2(q)))


def von_neumann_entropy(rho):
    """Shannon entropy of the spectrum (tiny negatives clipped)."""
    rho = _as_density(rho)
    w = np.linalg.eigvalsh(rho.matrix)
    return shannon_entropy(np.clip(w, 0.0, None))


def purity(rho):
    """tr rho^2, in [1/d, 1]."""
    rho = _as_density(rho)
    return float(np.trace(rho.matrix @ rho.matrix).real)


def linear_entropy(rho):
    """(d/(d-1)) (1 - tr rho^2), normalized to [0, 1] at every dimension."""
    rho = _as_density(rho)
    d = rho.dims.total
    return float((d / (d - 1.0)) * (1.0 - purity(rho)))


def participation_ratio(rho):
    """1 / tr rho^2: effective number of states in the mixture."""
    return 1.0 / purity(rho)


def relative_entropy(rho, sigma, support_eps=_SUPPORT_EPS):
    """Quantum relative entropy tr rho (log2 rho - log2 sigma), in bits.

    Returns DIVERGENCE when the support of rho is not contained in the
    support of sigma.
    """
    rho = _as_density(rho)
    sigma = _as_density(sigma)
    if rho.dims.dims != sigma.dims.dims:
        raise DimensionError("relative_entropy requires matching dims")
    ws, vs = np.linalg.eigh(sigma.matrix)
    # weight of rho on each sigma eigenvector
    overlap = np.einsum("ij,jk,ki->i", vs.conj().T, rho.matrix, vs).real
    overlap = np.clip(overlap, 0.0, None)
    zero = ws <= support_eps
    if np.any(overlap[zero] > _OVERLAP_EPS):
        return DIVERGENCE
    wr = np.clip(np.linalg.eigvalsh(rho.matrix), 0.0, None)
    pos_r = wr > 0
    tr_rho_log_rho = float(np.sum(wr[pos_r] * np.log2(wr[pos_r])))
    pos_s = ~zero
    tr_rho_log_sigma = float(np.sum(overlap[pos_s] * np.log2(ws[pos_s])))
    return tr_rho_log_rho - tr_rho_log_sigma


def kl_divergence(p, q, support_eps=_SUPPORT_EPS):
    """Classical relative entropy sum p_i log2(p_i / q_i), in bits."""
    p = _probs(p)
    q = _probs(q)
    if p.shape != q.shape:
        raise DimensionError("kl_divergence requires equal-length distributions")
    if np.any((q <= support_eps) & (p > _OVERLAP_EPS)):
        return DIVERGENCE
    mask = p > 0
    return float(np.sum(p[mask] * (np.log2(p[mask]) - np.log2(q[mask]))))


def fidelity(a, b):
    """F = [tr sqrt(sqrt(a) b sqrt(a))]^2 (squared convention).

    With this convention F(rho, |psi><psi|) = <psi|rho|psi>.
    """
    a = _as_density(a)
    b = _as_density(b)
    if a.dims.dims != b.dims.dims:
        raise DimensionError("fidelity requires matching dims")
    # tr sqrt(sqrt(a) b sqrt(a)) equals the nuclear norm of sqrt(a) sqrt(b),
    # which is much better conditioned on rank-deficient states
    sa = sqrtm_psd(a.matrix)
    sb = sqrtm_psd(b.matrix)
    s = np.linalg.svd(sa @ sb, compute_uv=False)
    return float(min(np.sum(s) ** 2, 1.0 + 1e-12))


def distance(kind, a, b):
    """Distance (or fidelity) between two states.

    fubini_study requires both arguments to be PureStates; every other
    kind accepts PureState or DensityMatrix.
    """
    if kind not in DISTANCE_KINDS:
        raise DomainError(f"unknown distance kind {kind!r}")
    if kind == "fubini_study":
        if not (isinstance(a, PureState) and isinstance(b, PureState)):
            raise DomainError("fubini_study is defined for pure states only")
        if a.dims.dims != b.dims.dims:
            raise DimensionError("distance requires matching dims")
        ov = abs(np.vdot(a.amplitudes, b.amplitudes))
        return float(np.arccos(min(ov, 1.0)))
    a = _as_density(a)
    b = _as_density(b)
    if a.dims.dims != b.dims.dims:
        raise DimensionError("distance requires matching dims")
    if kind == "hilbert_schmidt":
        diff = a.matrix - b.matrix
        return float(np.sqrt(max(np.trace(diff @ diff).real, 0.0)))
    if kind == "trace":
        w = np.linalg.eigvalsh(a.matrix - b.matrix)
        return float(0.5 * np.sum(np.abs(w)))
    f = fidelity(a, b)
    if kind == "fidelity":
        return f
    root_f = np.sqrt(min(max(f, 0.0), 1.0))
    if kind == "bures_distance":
        return float(np.sqrt(max(2.0 * (1.0 - root_f), 0.0)))
    return float(np.arccos(root_f))  # bures_angle


def mutual_information(rho, part_a):
    """S(rho_A) + S(rho_B) - S(rho) across the bipartition part_a | rest."""
    part_a = sorted(set(int(k) for k in part_a))
    n = rho.dims.n_particles
    if not part_a or len(part_a) == n:
        raise DomainError("bipartition must split the particles into two non-empty sets")
    part_b = [k for k in range(n) if k not in part_a]
    rho_a = partial_trace(rho, part_b)
    rho_b = partial_trace(rho, part_a)
    return (
        von_neumann_entropy(rho_a)
        + von_neumann_entropy(rho_b)
        - von_neumann_entropy(rho)
    )


def majorizes(p, q, tol=DEFAULT_TOL):
    """True iff p majorizes q: descending partial sums of p dominate q's.

    The shorter vector is zero-padded; totals must agree within tolerance.
    """
    p = _probs(p)
    q = _probs(q)
    n = max(p.shape[0], q.shape[0])
    p = np.pad(p, (0, n - p.shape[0]))
    q = np.pad(q, (0, n - q.shape[0]))
    if abs(np.sum(p) - np.sum(q)) > tol.abs_eps + tol.rel_eps:
        return False
    cp = np.cumsum(np.sort(p)[::-1])
    cq = np.cumsum(np.sort(q)[::-1])
    return bool(np.all(cp >= cq - tol.abs_eps))

"""Entanglement quantifiers and tests.

Bipartitions are given as the set of 0-based particle indices on one
side; the other side is the complement. Optimization-backed quantities
(relative_entanglement, singlet_fraction) return numerically optimized
bounds: an upper bound for relative entanglement, a lower bound for the
singlet fraction.
"""

import numpy as np

from .errors import DimensionError, DomainError
from .measures import DIVERGENCE, relative_entropy, shannon_entropy
from .numerics import DEFAULT_TOL, sqrtm_psd
from .objects import DensityMatrix, DimSpec, pure_to_density
from .optimizer import OptimizerConfig, maximize, minimize, scaled_config
from .params import decode, param_space
from .transforms import partial_transpose, reorder_particles

_YY = np.array(
    [[0, 0, 0, -1], [0, 0, 1, 0], [0, 1, 0, 0], [-1, 0, 0, 0]], dtype=complex
)  # sigma_y (x) sigma_y


def _split(dims, part_a):
    part_a = sorted(set(int(k) for k in part_a))
    n = dims.n_particles
    if not part_a or len(part_a) == n:
        raise DomainError("bipartition must be a non-empty proper subset")
    if any(k < 0 or k >= n for k in part_a):
        raise DimensionError("particle index out of range")
    part_b = [k for k in range(n) if k not in part_a]
    return part_a, part_b


def _binary_entropy(x):
    if x <= 0.0 or x >= 1.0:
        return 0.0
    return float(-x * np.log2(x) - (1 - x) * np.log2(1 - x))


def schmidt_decomposition(psi, part_a):
    """Schmidt form across part_a | rest: psi = sum_i sqrt(l_i) |a_i>|b_i>.

    Returns (l, basis_a, basis_b): descending Schmidt weights summing
    to 1 and orthonormal basis columns for each side, in the reordered
    (part_a particles first) labeling.
    """
    part_a, part_b = _split(psi.dims, part_a)
    reordered = reorder_particles(psi, part_a + part_b)
    da = int(np.prod([psi.dims.dims[k] for k in part_a]))
    db = reordered.dims.total // da
    m = reordered.amplitudes.reshape(da, db)
    u, s, vh = np.linalg.svd(m, full_matrices=False)
    # deterministic phases: largest component of each |a_i> real positive
    for i in range(u.shape[1]):
        idx = int(np.argmax(np.abs(u[:, i])))
        pivot = u[idx, i]
        if np.abs(pivot) > 0:
            phase = np.abs(pivot) / pivot
            u[:, i] *= phase
            vh[i, :] *= np.conj(phase)
    lam = s * s
    lam = lam / np.sum(lam)
    return lam, u, vh.T.copy()  # columns of vh.T are the |b_i>


def pure_entanglement(psi, part_a):
    """Entropy of entanglement in ebits: Shannon entropy of the Schmidt weights."""
    lam, _, _ = schmidt_decomposition(psi, part_a)
    return shannon_entropy(np.clip(lam, 0.0, None))


def _two_qubit(rho):
    if rho.dims.dims != (2, 2):
        raise DimensionError("this measure is defined for two qubits only")


def concurrence(rho):
    """Wootters concurrence of a two-qubit state, in [0, 1]."""
    _two_qubit(rho)
    m = rho.matrix
    # eigenvalues of rho (YY rho* YY) equal those of the Hermitian
    # sqrt(rho) (YY rho* YY) sqrt(rho), which eigvalsh handles accurately
    root = sqrtm_psd(m, clip_eps=1e-7)
    w = np.linalg.eigvalsh(root @ (_YY @ m.conj() @ _YY) @ root)
    w = np.clip(w, 0.0, None)
    if w[-1] > 0:
        w[w < 1e-14 * w[-1]] = 0.0
    w = np.sqrt(w)[::-1]
    return float(max(0.0, w[0] - w[1] - w[2] - w[3]))


def tangle(rho):
    """Square of the concurrence."""
    c = concurrence(rho)
    return c * c


def eof_2qubit(rho):
    """Entanglement of formation in ebits, via Wootters' closed form."""
    c = concurrence(rho)
    return _binary_entropy((1.0 + np.sqrt(max(1.0 - c * c, 0.0))) / 2.0)


def _pt_trace_norm(rho, part_a):
    part_a, _ = _split(rho.dims, part_a)
    pt = partial_transpose(rho, part_a)
    w = np.linalg.eigvalsh(pt.matrix)
    return float(np.sum(np.abs(w))), w


def negativity(rho, part_a):
    """N = (||rho^T_A||_1 - 1) / 2: magnitude of the negative PT spectrum."""
    norm1, _ = _pt_trace_norm(rho, part_a)
    return max(0.0, (norm1 - 1.0) / 2.0)


def log_negativity(rho, part_a):
    """log2 of the partial-transpose trace norm; >= 0."""
    norm1, _ = _pt_trace_norm(rho, part_a)
    return max(0.0, float(np.log2(norm1)))


def ppt_test(rho, part_a, tol=DEFAULT_TOL):
    """Peres-Horodecki: True iff the partial transpose is PSD within tol.

    Decides separability for 2x2 and 2x3 systems; necessary elsewhere.
    """
    _, w = _pt_trace_norm(rho, part_a)
    return bool(np.min(w) >= -tol.abs_eps)


def relative_entanglement(rho, config=None):
    """Upper bound on E_R: minimized relative entropy to the separable set.

    The separable side is parametrized as a mixture of d^2 pure product
    states; the optimizer moves through support-violating (infinite
    divergence) points freely. Returns (value, closest_separable_state).
    """
    config = config or OptimizerConfig()
    dims = rho.dims
    space = param_space("separable", dims)

    # fixed-rho pieces of tr rho (log rho - log sigma)
    wr = np.clip(np.linalg.eigvalsh(rho.matrix), 0.0, None)
    pos = wr > 0
    tr_rho_log_rho = float(np.sum(wr[pos] * np.log2(wr[pos])))
    rho_m = rho.matrix
    support_eps = 1e-15
    overlap_eps = 1e-12

    from .params import _separable_matrix

    lower, upper = space.lower, space.upper

    def objective(theta):
        sigma = _separable_matrix(np.clip(theta, lower, upper), dims)
        ws, vs = np.linalg.eigh(sigma)
        overlap = np.einsum("ji,jk,ki->i", vs.conj(), rho_m, vs).real
        zero = ws <= support_eps
        if np.any(overlap[zero] > overlap_eps):
            return DIVERGENCE
        keep = ~zero
        return tr_rho_log_rho - float(np.sum(overlap[keep] * np.log2(ws[keep])))

    # scale the annealing temperature to the objective at a first feasible sample
    rng = np.random.default_rng(config.seed)
    for _ in range(200):
        val = objective(rng.uniform(lower, upper))
        if np.isfinite(val):
            if val > 0:
                config = scaled_config(config, val)
            break

    result = minimize(objective, space, config)
    sigma = decode(space, result.best_params)
    return result.best_value, sigma


def singlet_fraction(rho, config=None):
    """Maximal overlap with the maximally entangled family of two qubits.

    Optimizes <Phi+|(U^dag (x) I) rho (U (x) I)|Phi+> over single-qubit
    unitaries; one-sided rotations suffice because
    (U (x) V)|Phi+> = (U V^T (x) I)|Phi+>.
    """
    _two_qubit(rho)
    config = config or OptimizerConfig()
    space = param_space("unitary", DimSpec([2]))
    rho_m = rho.matrix

    def overlap(theta):
        u = decode(space, theta).matrix
        v = u.reshape(4) / np.sqrt(2.0)  # (U (x) I)|Phi+> in flat form
        return float(np.real(np.vdot(v, rho_m @ v)))

    result = maximize(overlap, space, config)
    return result.best_value

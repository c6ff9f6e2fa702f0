"""Experiment sweeps emitting CSV rows, reproducible from (flags, seed).

Each run_* function returns a list of row dicts matching the fixed header
of its experiment; the CLI serializes them. All sweeps are sequential and
seeded, so a fixed invocation reproduces its CSV bit-for-bit.
"""

import numpy as np

from .entanglement import concurrence, pure_entanglement, relative_entanglement
from .errors import DomainError, OptimizationFailedError
from .measures import distance, von_neumann_entropy
from .objects import DensityMatrix, DimSpec, PureState, make_pure
from .optimizer import OptimizerConfig, maximize
from .params import decode, param_space
from .transforms import reorder_particles

HEADERS = {
    "superpos": ["pair_id", "alpha_sq", "entanglement", "bound_name", "bound_value", "skip"],
    "mems": ["p", "q", "max_concurrence", "trace_dist"],
    "bloch": ["class", "ci_index", "cj_index", "ci", "cj"],
    "additivity": ["trial", "er_1", "er_2", "er_joint", "delta", "failed"],
}


# ---------------------------------------------------------------------------
# superposition sweep bound plug-ins

_BOUNDS = {}


def register_bound(name, fn):
    """Register a bound plug-in: fn(psi, phi, alpha, beta) -> float.

    The function may run its own inner optimization (e.g. over a single
    degree of freedom) before returning a value.
    """
    _BOUNDS[name] = fn


def _lps_stub(psi, phi, alpha, beta):
    raise NotImplementedError(
        "LPS superposition bound: formula lives in an external reference; "
        "register a real implementation with register_bound('lps', fn)"
    )


def _gour_stub(psi, phi, alpha, beta):
    raise NotImplementedError(
        "Gour superposition bound: formula lives in an external reference; "
        "register a real implementation with register_bound('gour', fn)"
    )


register_bound("lps", _lps_stub)
register_bound("gour", _gour_stub)


def run_superpos(n_pairs, n_alpha, seed, bounds=(), n_phases=1):
    """Entanglement of a|Psi> + b|Phi> swept over |a|^2 for random pairs.

    Both components are random two-qubit pure states; a and b are real
    nonnegative except for the optional relative-phase sweep (n_phases
    uniform phases on b). Near-cancelling superpositions (norm < 1e-8)
    are emitted with skip=1 and an empty entanglement field.
    """
    if n_alpha < 2:
        raise DomainError("n_alpha must be >= 2")
    dims = DimSpec([2, 2])
    space = param_space("pure", dims)
    rng = np.random.default_rng(seed)
    rows = []
    for pair in range(n_pairs):
        psi = decode(space, rng.uniform(space.lower, space.upper))
        phi = decode(space, rng.uniform(space.lower, space.upper))
        for k_phase in range(n_phases):
            phase = 2 * np.pi * k_phase / n_phases
            pair_id = str(pair) if n_phases == 1 else f"{pair}p{k_phase}"
            for alpha_sq in np.linspace(0.0, 1.0, n_alpha):
                alpha = np.sqrt(alpha_sq)
                beta = np.sqrt(1.0 - alpha_sq) * np.exp(1j * phase)
                vec = alpha * psi.amplitudes + beta * phi.amplitudes
                norm = np.linalg.norm(vec)
                base = {"pair_id": pair_id, "alpha_sq": alpha_sq}
                if norm < 1e-8:
                    rows.append({**base, "entanglement": "", "bound_name": "",
                                 "bound_value": "", "skip": 1})
                    continue
                gamma = PureState(vec / norm, dims)
                ent = pure_entanglement(gamma, [0])
                if not bounds:
                    rows.append({**base, "entanglement": ent, "bound_name": "",
                                 "bound_value": "", "skip": 0})
                for name in bounds:
                    value = _BOUNDS[name](psi, phi, alpha, beta)
                    rows.append({**base, "entanglement": ent, "bound_name": name,
                                 "bound_value": value, "skip": 0})
    return rows


# ---------------------------------------------------------------------------
# maximally entangling unitaries over a diagonal product state


def max_concurrence_over_unitaries(rho, opt):
    """Maximal Wootters concurrence of U rho U^dag over 4x4 unitaries."""
    space = param_space("unitary", rho.dims)
    rho_m = rho.matrix
    dims = rho.dims

    def objective(theta):
        u = decode(space, theta).matrix
        return concurrence(DensityMatrix(u @ rho_m @ u.conj().T, dims))

    return maximize(objective, space, opt).best_value


def run_mems(resolution, opt, seed=0):
    """Grid sweep of the most-entangling unitary for diag(p,1-p) (x) diag(q,1-q).

    trace_dist is the trace distance of diag(p,1-p) from the maximally
    mixed qubit (= 1/2 - p on this grid), the contour coordinate of the
    MEMS picture.
    """
    if not 0 < resolution <= 0.25:
        raise DomainError("resolution must be in (0, 0.25]")
    steps = int(round(0.5 / resolution))
    grid = np.linspace(0.0, 0.5, steps + 1)
    dims = DimSpec([2, 2])
    eye2 = DensityMatrix(np.eye(2) / 2, DimSpec([2]))
    rows = []
    for p in grid:
        single = DensityMatrix(np.diag([p, 1 - p]).astype(complex), DimSpec([2]))
        tdist = distance("trace", single, eye2)
        for q in grid:
            rho = DensityMatrix(
                np.kron(np.diag([p, 1 - p]), np.diag([q, 1 - q])).astype(complex), dims
            )
            best = max_concurrence_over_unitaries(rho, opt)
            rows.append({"p": p, "q": q, "max_concurrence": best, "trace_dist": tdist})
    return rows


# ---------------------------------------------------------------------------
# Bloch hyper-sphere scatter


def _bloch_dims(n):
    if n == 4:
        return DimSpec([2, 2])
    if n in (2, 3):
        return DimSpec([n])
    raise DomainError("run_bloch supports n in {2, 3, 4}")


def run_bloch(n, samples_per_class, projection, seed, classes=None):
    """Scatter two generator-basis coordinates for random state classes.

    Classes are density, separable (n = 4 only, across the [2,2] split),
    and pure. Requesting the separable class at n = 2 or 3 (single
    particle, no bipartition) is a domain error.
    """
    from .objects import density_to_bloch, pure_to_density

    dims = _bloch_dims(n)
    ci, cj = (int(k) for k in projection)
    if not (0 <= ci < n * n - 1 and 0 <= cj < n * n - 1):
        raise DomainError("projection indices must be < n^2 - 1")
    if classes is None:
        classes = ["density", "separable", "pure"] if n == 4 else ["density", "pure"]
    rows = []
    for class_index, cls in enumerate(classes):
        if cls == "separable" and dims.n_particles < 2:
            raise DomainError("separable class needs a multi-particle dimension")
        space = param_space(cls, dims)
        rng = np.random.default_rng([seed, class_index])
        for _ in range(samples_per_class):
            obj = decode(space, rng.uniform(space.lower, space.upper))
            rho = pure_to_density(obj) if cls == "pure" else obj
            c = density_to_bloch(rho).components
            rows.append({"class": cls, "ci_index": ci, "cj_index": cj,
                         "ci": c[ci], "cj": c[cj]})
    return rows


# ---------------------------------------------------------------------------
# additivity of relative entanglement


def _joint_state(rho1, rho2):
    """rho1 (x) rho2 regrouped as a bipartite [dA1*dA2, dB1*dB2] state."""
    m = np.kron(rho1.matrix, rho2.matrix)
    all_dims = list(rho1.dims) + list(rho2.dims)
    joint = DensityMatrix(m, all_dims)
    # order is A1 B1 A2 B2; regroup to (A1 A2) | (B1 B2)
    joint = reorder_particles(joint, [0, 2, 1, 3])
    da = rho1.dims.dims[0] * rho2.dims.dims[0]
    db = rho1.dims.dims[1] * rho2.dims.dims[1]
    return DensityMatrix(joint.matrix, DimSpec([da, db]))


def run_additivity(trials, dims, opt, mode="sample", joint_opt=None, seed=0, tol=1e-6):
    """Test E_R(rho1 (x) rho2) against E_R(rho1) + E_R(rho2).

    sample mode draws random state pairs; extremize mode searches the
    joint (rho1, rho2) parameter vector for the most negative gap.
    Returns (rows, summary); summary includes the additivity-gap spread,
    the fraction of non-negative gaps, and the exact von Neumann entropy
    additivity control.
    """
    dims = dims if isinstance(dims, DimSpec) else DimSpec(dims)
    joint_opt = joint_opt or opt
    rows = []
    entropy_err = 0.0

    def gap(rho1, rho2):
        er1, _ = relative_entanglement(rho1, opt)
        er2, _ = relative_entanglement(rho2, opt)
        er_joint, _ = relative_entanglement(_joint_state(rho1, rho2), joint_opt)
        return er1, er2, er_joint, er_joint - er1 - er2

    if mode == "sample":
        space = param_space("density", dims)
        rng = np.random.default_rng(seed)
        for trial in range(trials):
            rho1 = decode(space, rng.uniform(space.lower, space.upper))
            rho2 = decode(space, rng.uniform(space.lower, space.upper))
            s_joint = von_neumann_entropy(_joint_state(rho1, rho2))
            entropy_err = max(
                entropy_err,
                abs(s_joint - von_neumann_entropy(rho1) - von_neumann_entropy(rho2)),
            )
            try:
                er1, er2, er_joint, delta = gap(rho1, rho2)
                rows.append({"trial": trial, "er_1": er1, "er_2": er2,
                             "er_joint": er_joint, "delta": delta, "failed": 0})
            except OptimizationFailedError:
                rows.append({"trial": trial, "er_1": "", "er_2": "",
                             "er_joint": "", "delta": "", "failed": 1})
    elif mode == "extremize":
        space = param_space("density", dims)
        half = space.param_count
        from .optimizer import minimize
        from .params import ParamSpace

        joint_space = ParamSpace(
            "density", dims, 2 * half, np.vstack([space.bounds, space.bounds])
        )

        def objective(theta):
            rho1 = decode(space, theta[:half])
            rho2 = decode(space, theta[half:])
            try:
                return gap(rho1, rho2)[3]
            except OptimizationFailedError:
                return float("inf")

        result = minimize(objective, joint_space, joint_opt)
        rho1 = decode(space, result.best_params[:half])
        rho2 = decode(space, result.best_params[half:])
        er1, er2, er_joint, delta = gap(rho1, rho2)
        s_joint = von_neumann_entropy(_joint_state(rho1, rho2))
        entropy_err = abs(
            s_joint - von_neumann_entropy(rho1) - von_neumann_entropy(rho2)
        )
        rows.append({"trial": 0, "er_1": er1, "er_2": er2,
                     "er_joint": er_joint, "delta": delta, "failed": 0})
    else:
        raise DomainError(f"unknown additivity mode {mode!r}")

    deltas = [r["delta"] for r in rows if r["failed"] == 0]
    summary = {
        "trials": trials,
        "failed": sum(r["failed"] for r in rows),
        "delta_min": min(deltas) if deltas else None,
        "delta_mean": float(np.mean(deltas)) if deltas else None,
        "delta_max": max(deltas) if deltas else None,
        "fraction_superadditive": (
            sum(1 for d in deltas if d > -tol) / len(deltas) if deltas else None
        ),
        "entropy_additivity_max_err": entropy_err,
    }
    return rows, summary

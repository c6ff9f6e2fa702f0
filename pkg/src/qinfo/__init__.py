"""qinfo: quantum information toolkit with parametrizations and a
derivative-free global optimizer."""

from .errors import (
    DegenerateInputError,
    DimensionError,
    DomainError,
    NotSpannableError,
    OptimizationFailedError,
    QinfoError,
    UnknownNameError,
    ValidationError,
)
from .numerics import DEFAULT_TOL, Tolerance, approx_equal, chop, gram_schmidt, span_coefficients
from .objects import (
    CPD,
    BlochVector,
    DensityMatrix,
    DimSpec,
    HermitianMatrix,
    PureState,
    UnitaryMatrix,
    bloch_to_density,
    density_to_bloch,
    famous_gate,
    famous_state,
    from_json,
    make_cpd,
    make_density,
    make_pure,
    pure_to_density,
    to_json,
)
from .params import GeneratorSet, ParamSpace, decode, param_count, param_space, random_object, su_generators
from .transforms import (
    from_generator_basis,
    from_tensor,
    partial_trace,
    partial_transpose,
    reorder_particles,
    to_generator_basis,
    to_tensor,
)
from .measures import (
    DISTANCE_KINDS,
    DIVERGENCE,
    distance,
    fidelity,
    is_divergent,
    kl_divergence,
    linear_entropy,
    majorizes,
    mutual_information,
    participation_ratio,
    purity,
    relative_entropy,
    shannon_entropy,
    von_neumann_entropy,
)
from .entanglement import (
    concurrence,
    eof_2qubit,
    log_negativity,
    negativity,
    ppt_test,
    pure_entanglement,
    relative_entanglement,
    schmidt_decomposition,
    singlet_fraction,
    tangle,
)
from .measurement import MeasurementOutcome, orthogonal_measure, povm_measure, weak_measure
from .optimizer import OptimizationResult, OptimizerConfig, maximize, minimize

__version__ = "0.1.0"

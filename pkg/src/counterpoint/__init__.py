"""Second-species counterpoint from affine symmetries of Z_n.

Consonances form a strong dichotomy ``(X/Y)`` of Z_n; a 2-interval
``c + e1.x + e2.y`` is projected onto first-species intervals, and the
projections that keep the most consonances determine which downbeats may follow.
"""

__version__ = "0.1.0"

from .dichotomy import (
    CLASSICAL_CONSONANCES,
    Dichotomy,
    StrongDichotomy,
    chi,
    classical,
    deformed_set,
    enumerate_strong,
    find_polarity,
)
from .errors import (
    BoundViolation,
    CounterpointError,
    DissonantDownbeat,
    ModulusError,
    ModulusMismatch,
    NotAUnit,
    NotStrong,
)
from .fux import Composition, Reason, run_comparison, validate_composition, validate_step
from .projections import (
    ProjectionResult,
    comm_condition,
    first_species_successors,
    first_species_symmetries,
    projection_table,
    score,
    second_species_projections,
    second_species_successors,
    t2_from_ell,
    theorem_audit,
)
from .ring import (
    AffineMap,
    FirstInterval,
    Projection,
    TwoInterval,
    polarity1_apply,
    polarity2_apply,
    project_apply,
    units,
)

"""Extended cyclic codes over GF(2^m) and the arcs, hyperovals and ovoids they define."""

from .galois import (
    BinaryField,
    Coordinatizer,
    Embedding,
    FieldElement,
    FieldError,
    FieldMismatchError,
    NotInSubfieldError,
    ReducibleModulusError,
    Tower,
    build_tower,
    field_create,
    polar_decompose,
    rel_norm,
    rel_trace,
    roots_of_unity,
    unit_circle,
)
from .poly import Polynomial, cyclic_generator, minimal_polynomial
from .linalg import Matrix, null_space, rank, rref, same_row_space
from .codes import (
    BudgetExceeded,
    LinearCode,
    WeightProfile,
    columns_as_points,
    cyclic_code,
    dual,
    extend,
    macwilliams,
    subfield_subcode,
    weight_profile,
)
from .geometry import (
    ProjPointSet,
    denniston_classical,
    denniston_cyclic,
    denniston_polar,
    is_hyperoval,
    is_maximal_arc,
    is_ovoid,
    line_counts,
    regular_hyperoval,
)
from .verify import VerificationReport

__version__ = "0.1.0"

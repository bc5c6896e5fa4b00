"""Octonion algebra, discrete Cauchy-Riemann operators on hZ^8, and an exact
checker for the discrete octonionic Stokes identity."""
from ._scalars import Mode, ModeMismatchError
from .lattice import (
    Field,
    FieldFormatError,
    LatticeMismatchError,
    backward_diff,
    cr_backward_left,
    cr_forward_left,
    cr_forward_right,
    field_from_entries,
    forward_diff,
    pointwise_product,
    random_field,
    read_field,
    volume_sum,
    write_field,
)
from .octonion import (
    Associativity,
    CayleyTable,
    Octonion,
    SignedBasis,
    TableConstructionError,
    add,
    associator,
    basis_product,
    build_cayley_table,
    classification_census,
    classify_basis_triple,
    enumerate_fano_lines,
    grouped_pair_count,
    multiply,
    negate,
    norm_sq,
    scale,
)
from .stokes import (
    INDEX_SETS,
    IdentityViolation,
    StokesResult,
    correction_oracle,
    correction_term,
    index_sets,
    lhs_component_expansion,
    stokes_lhs,
    stokes_residual,
)

__version__ = "0.1.0"

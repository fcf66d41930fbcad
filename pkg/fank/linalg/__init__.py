from fank.linalg.lattice import (
    Lattice,
    Membership,
    SpanReport,
    hermite_basis,
    lattice_contains,
    lattice_leq,
    perp_lattice,
    primitive,
    spans_ambient,
)
from fank.linalg.normal_forms import IntMatrix, SmithDecomposition, smith_normal_form

__all__ = [
    "IntMatrix",
    "Lattice",
    "Membership",
    "SmithDecomposition",
    "SpanReport",
    "hermite_basis",
    "lattice_contains",
    "lattice_leq",
    "perp_lattice",
    "primitive",
    "smith_normal_form",
    "spans_ambient",
]
